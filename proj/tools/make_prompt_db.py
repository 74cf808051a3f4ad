#!/usr/bin/env python3
# Copyright 2026 The layerchart Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates data/prompt_db.jsonl, the bundled few-shot example set."""

import argparse
import json
import random

TOPICS = [
    ("Quarterly GDP", "Quarter", ["2021Q1", "2021Q2", "2021Q3", "2021Q4", "2022Q1", "2022Q2"],
     [("GDP growth", "%", "real GDP growth"), ("Consumption growth", "%", "consumer spending")]),
    ("Bank deposits", "Year", ["2018", "2019", "2020", "2021", "2022", "2023"],
     [("Household deposits", "CNY Billion", "household deposits"),
      ("Corporate deposits", "CNY Billion", "corporate deposits")]),
    ("Index levels", "Month", ["Jan 2023", "Feb 2023", "Mar 2023", "Apr 2023", "May 2023", "Jun 2023"],
     [("Composite index", None, "the composite index"), ("Tech index", None, "the tech index")]),
    ("Company revenue", "Year", ["2017", "2018", "2019", "2020", "2021", "2022", "2023"],
     [("Revenue", "USD Million", "revenue"), ("Net income", "USD Million", "net income")]),
    ("EV market share", "Year", ["2017", "2018", "2019", "2020", "2021", "2022", "2023"],
     [("Subcompact", "%", "subcompact models"), ("Midsize", "%", "midsize models")]),
    ("Labour market", "Year", ["2016", "2017", "2018", "2019", "2020", "2021"],
     [("Unemployment rate", "%", "the unemployment rate"), ("Payrolls", "Million", "payrolls")]),
    ("Crude oil", "Year", ["2019", "2020", "2021", "2022", "2023"],
     [("Brent price", "USD", "Brent crude"), ("WTI price", "USD", "WTI crude")]),
    ("Bond yields", "Month", ["Jul 2022", "Aug 2022", "Sep 2022", "Oct 2022", "Nov 2022", "Dec 2022"],
     [("Ten-year yield", "%", "the ten-year yield"), ("Two-year yield", "%", "the two-year yield")]),
    ("Fund activity", "Period", ["2022 H1", "2022 H2", "2023 H1", "2023 H2"],
     [("Launches", None, "new funds launched"), ("Closures", None, "funds closed")]),
    ("Trade", "Year", ["2018", "2019", "2020", "2021", "2022"],
     [("Exports", "USD Billion", "exports"), ("Imports", "USD Billion", "imports")]),
]


def fmt(v):
    return str(int(v)) if float(v).is_integer() else ("%.1f" % v)


def series(rng, n, rising):
    base = rng.randint(20, 90)
    vals = [float(base)]
    for _ in range(n - 1):
        step = rng.randint(2, 9) + rng.choice([0, 0.5])
        vals.append(vals[-1] + (step if rising else -step))
    return vals


def digest(name, axis, labels, cols, data):
    lines = ["table: " + name]
    header = "columns: row | " + axis
    for col, unit, _ in cols:
        header += " | " + col + (" [" + unit + "]" if unit else "")
    lines.append(header)
    axis_kind = "temporal"
    lines.append("kinds: - | " + axis_kind + "".join(" | numeric" for _ in cols))
    for r, label in enumerate(labels):
        lines.append(str(r + 1) + " | " + label + "".join(" | " + fmt(data[c][r]) for c in range(len(cols))))
    return "\n".join(lines) + "\n"


def record(obj, col, a, b, trend, num, text):
    return ("{\n"
            '    "ObjectName": %s,\n'
            '    "DataName": %s,\n'
            '    "Position": [[%s, %d], [%s, %d]],\n'
            '    "Trend": %s,\n'
            '    "Num": %s,\n'
            '    "Text": %s}') % (json.dumps(obj), json.dumps(col), json.dumps(col), a,
                                 json.dumps(col), b, json.dumps(trend if trend else "None"),
                                 "[" + fmt(num) + "]" if num is not None else "[Null]",
                                 json.dumps(text))


def example(rng, idx):
    name, axis, labels, cols = TOPICS[idx % len(TOPICS)]
    n = len(labels)
    rising = [rng.random() < 0.5 for _ in cols]
    data = [series(rng, n, rising[c]) for c in range(len(cols))]
    template = idx // len(TOPICS) % 5
    c = rng.randrange(len(cols))
    col, unit, subj = cols[c]
    unit_text = "" if unit in (None, "%") else " " + unit
    pct = "%" if unit == "%" else ""
    records, reasons = [], []
    if template == 0:
        r = rng.randrange(n)
        v = data[c][r]
        text = "%s%s reached %s%s%s in %s." % (subj[0].upper(), subj[1:], fmt(v), pct, unit_text, labels[r])
        records.append(record(subj, col, r + 1, r + 1, None, v, text))
        reasons.append("The numerical value for object '%s' is %s, which corresponds to the column '%s' and row %d." % (subj, fmt(v), col, r + 1))
    elif template == 1:
        verb = "rose steadily" if rising[c] else "declined steadily"
        text = "%s%s %s from %s to %s." % (subj[0].upper(), subj[1:], verb, labels[0], labels[-1])
        records.append(record(subj, col, 1, n, verb, None, text))
        reasons.append("The trend for object '%s' is '%s', which corresponds to the column '%s' and from row 1 to row %d." % (subj, verb, col, n))
    elif template == 2:
        r = max(range(n), key=lambda i: data[c][i])
        v = data[c][r]
        text = "%s%s hit its highest level of %s%s%s in %s." % (subj[0].upper(), subj[1:], fmt(v), pct, unit_text, labels[r])
        records.append(record(subj, col, r + 1, r + 1, "highest level", None, text))
        records.append(record(subj, col, r + 1, r + 1, None, v, text))
        reasons.append("The trend for object '%s' is 'highest level', which corresponds to the column '%s' and row %d. The numerical value is %s at the same cell." % (subj, col, r + 1, fmt(v)))
    elif template == 3:
        o = 1 - c
        ocol, ounit, osubj = cols[o]
        r = n - 1
        text = "In %s, %s stood at %s%s while %s came in at %s%s." % (
            labels[r], subj, fmt(data[c][r]), pct, osubj, fmt(data[o][r]), "%" if ounit == "%" else "")
        records.append(record(subj, col, r + 1, r + 1, None, data[c][r], text))
        records.append(record(osubj, ocol, r + 1, r + 1, None, data[o][r], text))
        reasons.append("There are two objects: '%s' corresponds to '%s' and '%s' corresponds to '%s'. Their values %s and %s are in row %d." % (subj, col, osubj, ocol, fmt(data[c][r]), fmt(data[o][r]), r + 1))
    else:
        verb = "increased" if rising[c] else "decreased"
        a = rng.randrange(0, n - 2)
        text = "%s%s %s between %s and %s, ending at %s%s%s." % (
            subj[0].upper(), subj[1:], verb, labels[a], labels[-1], fmt(data[c][-1]), pct, unit_text)
        records.append(record(subj, col, a + 1, n, verb, None, text))
        records.append(record(subj, col, n, n, None, data[c][-1], text))
        reasons.append("The trend for object '%s' is '%s', which corresponds to the column '%s' and from row %d to row %d. The numerical value %s is in row %d." % (subj, verb, col, a + 1, n, fmt(data[c][-1]), n))
    reason = " ".join(reasons)
    output = "Result: " + ",\n".join(records) + "\nReason: " + json.dumps(reason) + "\n"
    return {
        "id": "ex%02d" % (idx + 1),
        "inputText": text,
        "tableDigest": digest(name, axis, labels, cols, data),
        "expectedOutput": output,
        "reasoning": reason,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="data/prompt_db.jsonl")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    with open(args.out, "w") as f:
        for i in range(args.count):
            f.write(json.dumps(example(rng, i), ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
