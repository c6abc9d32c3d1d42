#!/usr/bin/env python3
"""Write the bundled UCI datasets shipped with scikit-learn as plain CSV under data/.

Each output file has a header row, numeric feature columns and the class name
in the last column. Banknote is not redistributed by scikit-learn; place the UCI
file data_banknote_authentication.txt in data/ as banknote.csv to enable it.
"""
import csv
import os
import sys

from sklearn.datasets import load_breast_cancer, load_iris, load_wine


def write(path, bunch):
    names = [n.replace(" ", "_") for n in bunch.feature_names]
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(names + ["class"])
        for row, label in zip(bunch.data, bunch.target):
            w.writerow([repr(float(v)) for v in row] + [bunch.target_names[label]])


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    write(os.path.join(out_dir, "iris.csv"), load_iris())
    write(os.path.join(out_dir, "wine.csv"), load_wine())
    write(os.path.join(out_dir, "breast_cancer.csv"), load_breast_cancer())


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
