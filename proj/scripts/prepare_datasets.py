#!/usr/bin/env python3
"""Write data/iris.csv and data/wine.csv from the copies bundled with scikit-learn.

Both files keep all three classes; the binary experiments drop one class at
load time (`--exclude-label 0` drops Setosa from Iris and cultivar 1 from Wine).
"""
import csv
import os
import sys

import sklearn

IRIS_COLUMNS = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
WINE_COLUMNS = [
    "alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium",
    "total_phenols", "flavanoids", "nonflavanoid_phenols", "proanthocyanins",
    "color_intensity", "hue", "od280_od315", "proline",
]


def convert(src, dst, columns):
    with open(src, newline="") as f:
        rows = list(csv.reader(f))
    n, d = int(rows[0][0]), int(rows[0][1])
    assert d == len(columns) and len(rows) == n + 1, src
    with open(dst, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(columns + ["class"])
        w.writerows(rows[1:])
    print(f"{dst}: {n} rows, {d} features")


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
    src = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data")
    os.makedirs(out, exist_ok=True)
    convert(os.path.join(src, "iris.csv"), os.path.join(out, "iris.csv"), IRIS_COLUMNS)
    convert(os.path.join(src, "wine_data.csv"), os.path.join(out, "wine.csv"), WINE_COLUMNS)


if __name__ == "__main__":
    main()
