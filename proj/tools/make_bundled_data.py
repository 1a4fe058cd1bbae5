#!/usr/bin/env python3
"""Regenerates the bundled CSVs under data/.

The bundled datasets are deterministic stand-ins for the UCI originals, which
cannot be redistributed here:

* cars.csv     -- full 1728-row factorial over the six car attributes.  The
                  UCI Car Evaluation data is itself generated from a hidden
                  rule-based decision model; here rows are labeled by a
                  compact default-with-exceptions rule set over safety,
                  capacity, trunk size and running costs, adjusted at the
                  decision boundary to reproduce the published binary class
                  distribution exactly (1210 unacceptable / 518 acceptable).
* breast_w.csv -- 699 synthetic rows shaped like the UCI Wisconsin breast
                  cancer (original) data: nine 1..10 cytology features,
                  458 benign / 241 malignant, 16 missing bare_nuclei cells.
* heart.csv    -- 270 synthetic rows shaped like the UCI Statlog heart data:
                  13 mixed numeric/categorical features, 150 absent /
                  120 present.

Use tools/fetch_uci.py to substitute the genuine UCI files when network
access is available.
"""

import csv
import os
import random

OUT = os.path.join(os.path.dirname(__file__), "..", "data")

# ---------------------------------------------------------------- cars

PRICES = ["very_high", "high", "medium", "low"]
DOORS = ["2", "3", "4", "5more"]
PERSONS = ["2", "4", "more"]
TRUNK = ["small", "medium", "big"]
SAFETY = ["low", "medium", "high"]

# Two near-boundary cars promoted to acceptable so the binary class counts
# land on the published 1210/518 split (the rule set alone yields 516).
CARS_BOUNDARY_FLIPS = {
    ("low", "very_high", "5more", "more", "big", "high"),
    ("medium", "very_high", "5more", "more", "big", "high"),
}


def car_acceptable(price, maint, doors, persons, trunk, safety):
    if (price, maint, doors, persons, trunk, safety) in CARS_BOUNDARY_FLIPS:
        return True
    # Safe cars are acceptable unless too small or costly to maintain.
    if safety == "high" and persons != "2" and maint != "very_high":
        return True
    # Mid-safety four-seaters, barring the overpriced cramped configurations.
    if persons == "4" and safety == "medium":
        if not (price == "very_high" and trunk == "small") and not (
            price == "high" and maint == "very_high"
        ):
            return True
    # Mid-safety people movers with real luggage room.
    if persons == "more" and safety == "medium" and trunk == "big":
        return True
    return False


def make_cars():
    rows = []
    acceptable = 0
    for price in PRICES:
        for maint in PRICES:
            for doors in DOORS:
                for persons in PERSONS:
                    for trunk in TRUNK:
                        for safety in SAFETY:
                            ok = car_acceptable(price, maint, doors, persons, trunk, safety)
                            acceptable += ok
                            rows.append(
                                [
                                    price,
                                    maint,
                                    doors,
                                    persons,
                                    trunk,
                                    safety,
                                    "acceptable" if ok else "unacceptable",
                                ]
                            )
    assert len(rows) == 1728 and acceptable == 518, (len(rows), acceptable)
    with open(os.path.join(OUT, "cars.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["price", "maintenance", "doors", "persons", "trunk", "safety", "acceptability"])
        w.writerows(rows)


# ---------------------------------------------------------------- breast_w


def clamp(v, lo, hi):
    return max(lo, min(hi, v))


def make_breast_w():
    rng = random.Random(20201)
    features = [
        "clump_thickness",
        "cell_size_uniformity",
        "cell_shape_uniformity",
        "marginal_adhesion",
        "single_epi_cell_size",
        "bare_nuclei",
        "bland_chromatin",
        "normal_nucleoli",
        "mitoses",
    ]
    rows = []
    for label, n in [("benign", 458), ("malignant", 241)]:
        for _ in range(n):
            if label == "benign":
                severity = abs(rng.gauss(0.0, 0.9))
            else:
                severity = 2.2 + abs(rng.gauss(0.0, 1.6))
            row = []
            for feat in features:
                base = severity * 2.2 + rng.gauss(0.0, 1.6)
                if feat == "mitoses":
                    base = severity * 1.2 + rng.gauss(0.0, 1.0) - 1.0
                v = clamp(int(round(1.0 + base)), 1, 10)
                row.append(str(v))
            rows.append(row + [label])
    # a handful of missing bare_nuclei measurements, as in the original
    missing = rng.sample(range(len(rows)), 16)
    for i in missing:
        rows[i][features.index("bare_nuclei")] = "?"
    rng.shuffle(rows)
    with open(os.path.join(OUT, "breast_w.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(features + ["diagnosis"])
        w.writerows(rows)


# ---------------------------------------------------------------- heart


def make_heart():
    rng = random.Random(31417)
    rows = []
    for label, n in [("absent", 150), ("present", 120)]:
        for _ in range(n):
            risk = 1.0 if label == "present" else 0.0
            # moderate class overlap so rule accuracy tops out around 0.8
            noisy = clamp(risk + rng.gauss(0.0, 0.33), 0.0, 1.0)
            age = clamp(int(rng.gauss(49 + 8 * noisy, 9)), 29, 77)
            sex = 1 if rng.random() < 0.55 + 0.25 * noisy else 0
            chest_pain = rng.choices([1, 2, 3, 4], weights=[
                8 + 8 * (1 - noisy), 12 + 10 * (1 - noisy), 22 + 6 * (1 - noisy), 8 + 50 * noisy])[0]
            rest_bp = clamp(int(rng.gauss(126 + 12 * noisy, 16)), 94, 200)
            cholesterol = clamp(int(rng.gauss(240 + 18 * noisy, 45)), 126, 564)
            fbs = 1 if rng.random() < 0.15 else 0
            rest_ecg = rng.choices([0, 1, 2], weights=[55 - 15 * noisy, 5, 40 + 15 * noisy])[0]
            max_heart_rate = clamp(int(rng.gauss(162 - 28 * noisy, 18)), 71, 202)
            exang = 1 if rng.random() < 0.12 + 0.45 * noisy else 0
            oldpeak = round(clamp(rng.gauss(0.5 + 1.6 * noisy, 0.8), 0.0, 6.2), 1)
            slope = rng.choices([1, 2, 3], weights=[60 - 25 * noisy, 30 + 20 * noisy, 10 + 5 * noisy])[0]
            vessels = rng.choices([0, 1, 2, 3], weights=[70 - 45 * noisy, 15 + 15 * noisy,
                                                         10 + 15 * noisy, 5 + 15 * noisy])[0]
            thal = rng.choices([3, 6, 7], weights=[70 - 45 * noisy, 10, 20 + 40 * noisy])[0]
            rows.append([age, sex, chest_pain, rest_bp, cholesterol, fbs, rest_ecg,
                         max_heart_rate, exang, oldpeak, slope, vessels, thal, label])
    rng.shuffle(rows)
    with open(os.path.join(OUT, "heart.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["age", "sex", "chest_pain", "rest_bp", "cholesterol", "fbs", "rest_ecg",
                    "max_heart_rate", "exang", "oldpeak", "slope", "vessels", "thal", "disease"])
        w.writerows(rows)


# ---------------------------------------------------------------- fixtures


def make_fixtures():
    with open(os.path.join(OUT, "table1.db"), "w") as f:
        f.write("a b c d e:25:5 10 1 6 3\n")
        f.write("b c d e:20:8 3 6 3\n")
        f.write("a c d:8:5 1 2\n")
        f.write("a c e:22:10 6 6\n")
        f.write("b c e:9:4 2 3\n")
    with open(os.path.join(OUT, "birds.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["bird", "penguin", "flies"])
        w.writerow(["true", "false", "yes"])
        w.writerow(["true", "true", "no"])
        w.writerow(["false", "false", "no"])
        w.writerow(["false", "true", "no"])
    with open(os.path.join(OUT, "birds_theory.pl"), "w") as f:
        f.write("flies(A) :- bird(A), not ab_bird(A).\n")
        f.write("ab_bird(A) :- penguin(A).\n")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    make_cars()
    make_breast_w()
    make_heart()
    make_fixtures()
    print("wrote data/ files")
