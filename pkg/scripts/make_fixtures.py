#!/usr/bin/env python3
"""Regenerate the JSON matrix fixtures under tests/fixtures/.

Fixtures: the order-5 symplectic matrix, the normalized order-5 pair with
identity coupling unitary, and a Dirichlet-type order-2 pair.
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from bccanon import OrderSpec, construct_from_W, symplectic_matrix
from bccanon.matio import write_matrix_file


def main():
    out = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")
    os.makedirs(out, exist_ok=True)

    write_matrix_file(os.path.join(out, "c5.json"), symplectic_matrix(5))

    pair = construct_from_W(np.eye(5, dtype=complex), OrderSpec.from_order(5))
    write_matrix_file(os.path.join(out, "w_identity_A.json"), pair.A)
    write_matrix_file(os.path.join(out, "w_identity_B.json"), pair.B)

    dirichlet_a = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    dirichlet_b = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    write_matrix_file(os.path.join(out, "dirichlet_A.json"), dirichlet_a)
    write_matrix_file(os.path.join(out, "dirichlet_B.json"), dirichlet_b)

    print(f"fixtures written to {os.path.abspath(out)}")


if __name__ == "__main__":
    main()
