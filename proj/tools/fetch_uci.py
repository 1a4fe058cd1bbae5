#!/usr/bin/env python3
"""Downloads the genuine UCI datasets and converts them to the CSV schema the
toolkit expects, replacing the bundled stand-ins under data/.

Requires network access to archive.ics.uci.edu.

  python3 tools/fetch_uci.py [--out data]
"""

import argparse
import csv
import os
import urllib.request

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"


def fetch(path):
    with urllib.request.urlopen(f"{BASE}/{path}") as r:
        return r.read().decode("utf-8")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)


def cars(out):
    text = fetch("car/car.data")
    value_map = {"vhigh": "very_high", "med": "medium", "lug_boot": "trunk"}
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        buying, maint, doors, persons, lug, safety, cls = line.split(",")
        rows.append([
            value_map.get(buying, buying),
            value_map.get(maint, maint),
            doors,
            persons.replace("more", "more"),
            {"med": "medium"}.get(lug, lug),
            {"med": "medium"}.get(safety, safety),
            "unacceptable" if cls == "unacc" else "acceptable",
        ])
    write_csv(os.path.join(out, "cars.csv"),
              ["price", "maintenance", "doors", "persons", "trunk", "safety", "acceptability"],
              rows)


def breast_w(out):
    text = fetch("breast-cancer-wisconsin/breast-cancer-wisconsin.data")
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        cells = line.split(",")
        # drop the sample id; class 2 = benign, 4 = malignant
        rows.append(cells[1:10] + ["benign" if cells[10] == "2" else "malignant"])
    write_csv(os.path.join(out, "breast_w.csv"),
              ["clump_thickness", "cell_size_uniformity", "cell_shape_uniformity",
               "marginal_adhesion", "single_epi_cell_size", "bare_nuclei",
               "bland_chromatin", "normal_nucleoli", "mitoses", "diagnosis"],
              rows)


def heart(out):
    text = fetch("statlog/heart/heart.dat")
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        cells = line.split()
        rows.append(cells[:13] + ["absent" if cells[13] == "1" else "present"])
    write_csv(os.path.join(out, "heart.csv"),
              ["age", "sex", "chest_pain", "rest_bp", "cholesterol", "fbs", "rest_ecg",
               "max_heart_rate", "exang", "oldpeak", "slope", "vessels", "thal", "disease"],
              rows)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    cars(args.out)
    breast_w(args.out)
    heart(args.out)
    print("fetched and converted UCI datasets")
