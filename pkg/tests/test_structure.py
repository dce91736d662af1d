"""Tests for the fixed structural matrices."""

import numpy as np
import pytest
from scipy.linalg import block_diag

from bccanon import (
    OrderSpec,
    Parity,
    UnsupportedOrder,
    eigenbasis,
    even_order_Z,
    even_order_eigenbasis,
    q4_matrix,
    symplectic_matrix,
    unitarity_residual,
)

# Signed antidiagonal of order 5, written out entry by entry.
C5_EXPECTED = np.array(
    [
        [0, 0, 0, 0, -1],
        [0, 0, 0, 1, 0],
        [0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0],
        [-1, 0, 0, 0, 0],
    ],
    dtype=complex,
)


class TestOrderSpec:
    @pytest.mark.parametrize(
        "m, n, parity",
        [
            (3, 1, Parity.ODD_N),
            (5, 2, Parity.EVEN_N),
            (7, 3, Parity.ODD_N),
            (9, 4, Parity.EVEN_N),
            (2, 1, Parity.EVEN_ORDER),
            (6, 3, Parity.EVEN_ORDER),
        ],
    )
    def test_from_order(self, m, n, parity):
        spec = OrderSpec.from_order(m)
        assert (spec.m, spec.n, spec.parity) == (m, n, parity)

    def test_rejects_too_small(self):
        with pytest.raises(UnsupportedOrder):
            OrderSpec.from_order(1)

    def test_rejects_inconsistent_fields(self):
        with pytest.raises(UnsupportedOrder):
            OrderSpec(m=5, n=3, parity=Parity.ODD_N)

    def test_csd_partition(self):
        assert OrderSpec.from_order(3).csd_partition == (2, 1)
        assert OrderSpec.from_order(5).csd_partition == (2, 3)
        assert OrderSpec.from_order(7).csd_partition == (4, 3)
        assert OrderSpec.from_order(6).csd_partition == (3, 3)


class TestSymplecticMatrix:
    def test_order_five_exact(self):
        assert np.array_equal(symplectic_matrix(5), C5_EXPECTED)

    def test_order_one(self):
        assert np.array_equal(symplectic_matrix(1), np.array([[-1.0]], dtype=complex))

    def test_order_three_by_hand(self):
        # (-1)^r at column 4-r: rows (0,0,-1), (0,1,0), (-1,0,0)
        expected = np.array([[0, 0, -1], [0, 1, 0], [-1, 0, 0]], dtype=complex)
        assert np.array_equal(symplectic_matrix(3), expected)

    @pytest.mark.parametrize("m", range(1, 13))
    def test_involution_property(self, m):
        c = symplectic_matrix(m)
        assert np.array_equal(c.imag, np.zeros((m, m)))
        square = c @ c
        if m % 2 == 1:
            assert np.array_equal(square, np.eye(m, dtype=complex))
            assert np.array_equal(c, c.T)
        else:
            assert np.array_equal(square, -np.eye(m, dtype=complex))
            assert np.array_equal(c, -c.T)


class TestEigenbasis:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_unitary_and_diagonalizing(self, n):
        spec = OrderSpec.from_order(2 * n + 1)
        basis = eigenbasis(spec)
        m = spec.m
        assert unitarity_residual(basis.V) < 1e-14
        h = block_diag(symplectic_matrix(m), -symplectic_matrix(m))
        signature = block_diag(-np.eye(m), np.eye(m))
        assert np.max(np.abs(h @ basis.V - basis.V @ signature)) < 1e-14

    @pytest.mark.parametrize("n", range(1, 6))
    def test_entry_set_and_count(self, n):
        v = eigenbasis(OrderSpec.from_order(2 * n + 1)).V
        nonzero = v[np.abs(v) > 0]
        assert np.array_equal(nonzero.imag, np.zeros(len(nonzero)))
        half = 1.0 / np.sqrt(2.0)
        for entry in nonzero.real:
            assert any(abs(entry - val) < 1e-15 for val in (half, -half, 1.0))
        # 2n columns with two entries each per half, plus two single-entry columns
        assert len(nonzero) == 8 * n + 2

    def test_block_v11_for_n_two(self):
        # first block: rows I2 / sqrt(2), middle row e3, last rows C2 / sqrt(2)
        basis = eigenbasis(OrderSpec.from_order(5))
        s = 1.0 / np.sqrt(2.0)
        c2 = np.array([[0, -1], [1, 0]], dtype=complex)
        expected = np.zeros((5, 5), dtype=complex)
        expected[:2, :2] = s * np.eye(2)
        expected[2, 2] = 1.0
        expected[3:, :2] = s * c2
        assert np.max(np.abs(basis.V11 - expected)) < 1e-15

    @pytest.mark.parametrize("n", range(1, 6))
    def test_blocks_satisfy_eigen_equations(self, n):
        spec = OrderSpec.from_order(2 * n + 1)
        basis = eigenbasis(spec)
        m = spec.m
        h = block_diag(symplectic_matrix(m), -symplectic_matrix(m))
        minus = np.vstack([basis.V11, basis.V21])
        plus = np.vstack([basis.V12, basis.V22])
        assert np.max(np.abs(h @ minus + minus)) < 1e-14
        assert np.max(np.abs(h @ plus - plus)) < 1e-14

    def test_even_order_unsupported(self):
        with pytest.raises(UnsupportedOrder):
            eigenbasis(OrderSpec.from_order(4))


class TestQ4Matrix:
    def test_n_two_block(self):
        # (-1)^(n+1) C2* = C2 at n=2, so the block reads [I2 0 C2; 0 sqrt2 0; I2 0 -C2]
        q4 = q4_matrix(OrderSpec.from_order(5))
        c2 = np.array([[0, -1], [1, 0]], dtype=complex)
        blk = np.zeros((5, 5), dtype=complex)
        blk[:2, :2] = np.eye(2)
        blk[:2, 3:] = c2
        blk[2, 2] = np.sqrt(2.0)
        blk[3:, :2] = np.eye(2)
        blk[3:, 3:] = -c2
        assert np.max(np.abs(q4 - block_diag(blk, blk))) < 1e-15

    def test_n_one_block(self):
        # C1 = (-1): (-1)^(n+1) C1* = -1 and (-1)^n C1* = +1 at n=1
        q4 = q4_matrix(OrderSpec.from_order(3))
        blk = np.array(
            [
                [1, 0, -1],
                [0, np.sqrt(2.0), 0],
                [1, 0, 1],
            ],
            dtype=complex,
        )
        assert np.max(np.abs(q4 - block_diag(blk, blk))) < 1e-15

    @pytest.mark.parametrize("n", range(1, 6))
    def test_rows_orthogonal_norm_two(self, n):
        q4 = q4_matrix(OrderSpec.from_order(2 * n + 1))
        gram = q4 @ q4.conj().T
        assert np.max(np.abs(gram - 2.0 * np.eye(q4.shape[0]))) < 1e-14

    def test_even_order_unsupported(self):
        with pytest.raises(UnsupportedOrder):
            q4_matrix(OrderSpec.from_order(4))


class TestEvenOrderZ:
    def test_n_one_exact(self):
        # (-1)^(n+1) i C1 = i * (-1) = -i at n=1; multiply the two factors by hand
        s = 1.0 / np.sqrt(2.0)
        expected = s * np.array(
            [
                [1, -1j, 0, 0],
                [1, 1j, 0, 0],
                [0, 0, 1, -1j],
                [0, 0, 1, 1j],
            ],
            dtype=complex,
        )
        assert np.max(np.abs(even_order_Z(1) - expected)) < 1e-15

    @pytest.mark.parametrize("n", range(1, 5))
    def test_matches_displayed_factor_product(self, n):
        eye = np.eye(n, dtype=complex)
        butterfly = np.block([[eye, eye], [eye, -eye]]) / np.sqrt(2.0)
        kappa = (-1.0) ** (n + 1) * 1j
        phase = block_diag(eye, kappa * symplectic_matrix(n), eye, kappa * symplectic_matrix(n))
        product = block_diag(butterfly, butterfly) @ phase
        assert np.max(np.abs(even_order_Z(n) - product)) < 1e-15

    @pytest.mark.parametrize("n", range(1, 5))
    def test_unitary(self, n):
        assert unitarity_residual(even_order_Z(n)) < 1e-14

    @pytest.mark.parametrize("n", range(1, 5))
    def test_off_diagonal_quadrants_zero(self, n):
        z = even_order_Z(n)
        half = 2 * n
        assert np.all(z[:half, half:] == 0)
        assert np.all(z[half:, :half] == 0)


class TestEvenOrderEigenbasis:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_unitary_and_diagonalizing(self, n):
        v = even_order_eigenbasis(n)
        assert unitarity_residual(v) < 1e-14
        m = 2 * n
        h = block_diag(1j * symplectic_matrix(m), -1j * symplectic_matrix(m))
        d = v.conj().T @ h @ v
        off = d - np.diag(np.diag(d))
        assert np.max(np.abs(off)) < 1e-14
        diag = np.real(np.diag(d))
        assert np.allclose(np.abs(diag), 1.0, atol=1e-14)
        # each half is a single eigenspace
        assert len(set(np.sign(diag[: 2 * n]))) == 1
        assert len(set(np.sign(diag[2 * n :]))) == 1
