import os
import sys
import numpy as np
from collections import OrderedDict

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(TESTS_DIR)


def read_csv(path):
    """Read a CSV file written by spsfom.utils.write_csv.

    Returns:
        tuple: (provenance, columns), the '# key: value' lines and the
            columns as float arrays.

    """
    provenance = OrderedDict()
    header = None
    rows = []
    with open(path, "r") as f:
        for line in f:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                key, _, value = stripped.lstrip("#").partition(":")
                provenance[key.strip()] = value.strip()
            elif header is None:
                header = stripped.split(",")
            else:
                rows.append([float(v) for v in stripped.split(",")])

    columns = OrderedDict()
    if header is not None:
        table = np.array(rows, dtype=float).reshape(len(rows), len(header))
        for i, name in enumerate(header):
            columns[name] = table[:, i]
    return provenance, columns
