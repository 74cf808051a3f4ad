#!/usr/bin/env python3
# Copyright 2026 The layerchart Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes tests/data/gold_corpus.json.

Annotation rules used for the spans below:
  subject    the words that name the data item, as written;
  trend      the phrase that describes a change, a summary value or an event;
  numerical  a number that is a value of the table, with its scale word or
             percent sign and without the currency or measure unit.
Counts, ratios and dates are not numerical labels.
"""

import json
import pathlib
import sys


def col(name, kind="numeric", unit=""):
    c = {"name": name, "kind": kind}
    if unit:
        c["unit"] = unit
    return c


TABLES = {
    "revenue": {
        "name": "revenue",
        "columns": [col("Year", "temporal"), col("Revenue", unit="CNY Billion"),
                    col("Net profit", unit="CNY Billion"), col("Operating margin", unit="%")],
        "rows": [[2019, 2480.0, 210.5, 13.2], [2020, 2610.0, 226.0, 14.0],
                 [2021, 2790.5, 241.3, 12.5], [2022, 2890.5, 259.8, 11.9],
                 [2023, 3050.0, 274.1, 12.8]],
    },
    "gdp": {
        "name": "gdp",
        "columns": [col("Quarter", "temporal"), col("change in GDP", unit="%")],
        "rows": [["2019Q1", 2.2], ["2019Q2", 2.6], ["2019Q3", 2.9], ["2019Q4", 2.7],
                 ["2020Q1", 2.3], ["2020Q2", 2.1], ["2020Q3", 2.4], ["2020Q4", -1.5],
                 ["2021Q1", -8.9], ["2021Q2", -31.4], ["2021Q3", -24.0], ["2021Q4", -15.5],
                 ["2022Q1", -8.0], ["2022Q2", -1.2]],
    },
    "power": {
        "name": "power",
        "columns": [col("Year", "temporal"), col("Coal", unit="billion kWh"),
                    col("Oil", unit="billion kWh"), col("Natural gas", unit="billion kWh"),
                    col("Nuclear", unit="billion kWh"), col("Renewables", unit="billion kWh")],
        "rows": [[2020, 774, 17, 1617, 790, 95], [2025, 690, 15, 1590, 780, 120],
                 [2030, 610, 14, 1550, 760, 150], [2035, 540, 13, 1520, 730, 180],
                 [2040, 480, 12, 1500, 700, 211]],
    },
    "evshare": {
        "name": "evshare",
        "columns": [col("Year", "temporal"), col("Subcompact and below", unit="%"),
                    col("Compact", unit="%"), col("Midsize to large", unit="%")],
        "rows": [[2017, 61, 20, 19], [2018, 57, 22, 21], [2019, 52, 24, 24],
                 [2020, 46, 26, 28], [2021, 41, 28, 31], [2022, 35, 29, 36],
                 [2023, 30, 30, 40]],
    },
    "hedge": {
        "name": "hedge",
        "columns": [col("Period", "categorical"), col("Launches"), col("Liquidations"),
                    col("Active")],
        "rows": [["2024 H1", 5, 11, 640], ["2023 H2", 9, 18, 655], ["2023 H1", 14, 7, 669]],
    },
    "index": {
        "name": "index",
        "columns": [col("Month", "temporal"), col("Composite index"), col("Tech index")],
        "rows": [["2023-01", 100, 120], ["2023-02", 104, 126], ["2023-03", 109, 133],
                 ["2023-04", 103, 138], ["2023-05", 98, 142], ["2023-06", 104, 135],
                 ["2023-07", 110, 129], ["2023-08", 105, 131]],
    },
}


def s(text):
    return {"kind": "subject", "text": text}


def t(text):
    return {"kind": "trend", "text": text}


def n(text):
    return {"kind": "numerical", "text": text}


NARRATIVES = [
    ("g01", "revenue", "Revenue reached CNY 3.05 trillion in 2023.",
     [s("Revenue"), n("3.05 trillion")]),
    ("g02", "revenue", "Net profit rose steadily from 2019 to 2023.",
     [s("Net profit"), t("rose steadily")]),
    ("g03", "revenue",
     "The operating margin fell to 11.9% in 2022 before it recovered to 12.8% in 2023.",
     [s("operating margin"), t("fell"), t("recovered"), n("11.9%"), n("12.8%")]),
    ("g04", "revenue",
     "In 2022, revenue of 2,890.5 billion yuan was more than ten times the net profit "
     "of 259.8 billion yuan.",
     [s("revenue"), s("net profit"), n("2,890.5 billion"), n("259.8 billion")]),
    ("g05", "gdp",
     "The change in real GDP showed a sharp decrease from 2020Q4 to 2021Q3, then a rise "
     "from 2021Q4 to 2022Q2.",
     [s("change in real GDP"), t("sharp decrease"), t("rise")]),
    ("g06", "gdp", "The change in GDP hit its lowest level of -31.4% in 2021Q2.",
     [s("change in GDP"), t("lowest level"), n("-31.4%")]),
    ("g07", "gdp", "The pandemic pushed the change in GDP down to -8.9% in 2021Q1.",
     [s("change in GDP"), t("pandemic"), n("-8.9%")]),
    ("g08", "power", "Coal will keep declining, falling to 480 billion kWh by 2040.",
     [s("Coal"), t("keep declining"), t("falling"), n("480 billion")]),
    ("g09", "power", "Oil plays a minor role and drops to 12 billion kWh in 2040.",
     [s("Oil"), t("drops"), n("12 billion")]),
    ("g10", "power",
     "Nuclear output decreases gradually from 790 billion kWh in 2020 to 700 billion kWh "
     "in 2040.",
     [s("Nuclear"), t("decreases gradually"), n("790 billion"), n("700 billion")]),
    ("g11", "power", "Renewables will continuously increase, reaching 211 billion kWh in 2040.",
     [s("Renewables"), t("continuously increase"), n("211 billion")]),
    ("g12", "power",
     "In 2030, natural gas produced 1,550 billion kWh, about twice the 760 billion kWh "
     "from nuclear.",
     [s("natural gas"), s("nuclear"), n("1,550 billion"), n("760 billion")]),
    ("g13", "evshare", "In 2023 the share of compact and midsize to large reached 70%.",
     [s("compact and midsize to large"), n("70%")]),
    ("g14", "evshare", "Subcompact and below fell steadily from 61% in 2017 to 30% in 2023.",
     [s("Subcompact and below"), t("fell steadily"), n("61%"), n("30%")]),
    ("g15", "evshare", "Midsize to large more than doubled, climbing from 19% in 2017 to 40% "
     "in 2023.",
     [s("Midsize to large"), t("more than doubled"), t("climbing"), n("19%"), n("40%")]),
    ("g16", "evshare", "In 2022 compact held 29% while midsize to large held 36%.",
     [s("compact"), s("midsize to large"), n("29%"), n("36%")]),
    ("g17", "hedge", "Liquidations rose to 18 in 2023 H2 while launches fell to 9.",
     [s("Liquidations"), s("launches"), t("rose"), t("fell"), n("18"), n("9")]),
    ("g18", "index",
     "The composite index fluctuated between 98 and 110 over the eight months.",
     [s("composite index"), t("fluctuated"), n("98"), n("110")]),
    ("g19", "index", "The tech index peaked at 142 in 2023-05.",
     [s("tech index"), t("peaked"), n("142")]),
    ("g20", "index", "In 2023-08 the tech index rebounded to 131.",
     [s("tech index"), t("rebounded"), n("131")]),
]


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    out = root / "tests" / "data" / "gold_corpus.json"
    if len(sys.argv) > 1:
        out = pathlib.Path(sys.argv[1])
    doc = {
        "tables": TABLES,
        "narratives": [{"id": i, "table": tb, "text": tx, "spans": sp}
                       for i, tb, tx, sp in NARRATIVES],
    }
    out.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
