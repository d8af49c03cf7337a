import pytest

from tjfcalc import abelian


class TestSmithForm:
    def test_diagonal_chain(self):
        assert abelian.smith_diagonal([[2, 0, 0], [0, 6, 0], [0, 0, 12]]) == [2, 6, 12]

    def test_non_chain_diagonal(self):
        assert abelian.smith_diagonal([[4, 0], [0, 6]]) == [2, 12]

    def test_zero_matrix(self):
        assert abelian.smith_diagonal([[0, 0], [0, 0]]) == []

    def test_dense(self):
        assert abelian.smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


class TestLattices:
    def test_hnf(self):
        assert abelian.row_hnf([[2, 4], [1, 1]], 2) == [[1, 1], [0, 2]]

    def test_kernel(self):
        assert abelian.kernel([[1, 1]], 2) == [[1, -1]]

    def test_coordinates(self):
        assert abelian.coordinates([[1, 0], [0, 2]], [3, 4]) == [3, 2]
        assert abelian.coordinates([[1, 0], [0, 2]], [3, 3]) is None

    def test_quotient_with_free_part(self):
        assert abelian.lattice_quotient([[1, 0], [0, 1]], [[2, 0]], 2) == [2, 0]

    def test_quotient_requires_containment(self):
        with pytest.raises(ValueError):
            abelian.lattice_quotient([[2, 0]], [[1, 0]], 2)

    def test_intersect_coordinate(self):
        assert abelian.intersect_coordinate([[1, 1], [0, 2]], [0], 2) == [[2, 0]]


class TestGroups:
    def test_normalize_merges_coprime(self):
        assert abelian.normalize_orders([2, 3, 0]) == [6, 0]

    def test_normalize_chain(self):
        assert abelian.normalize_orders([4, 6]) == [2, 12]

    def test_normalize_drops_trivial(self):
        assert abelian.normalize_orders([1, 1]) == []

    def test_order(self):
        assert abelian.group_order([2, 12]) == 24
        assert abelian.group_order([2, 0]) == 0

    def test_format(self):
        assert abelian.format_group([]) == "0"
        assert abelian.format_group([2, 0]) == "Z/2 + Z"

    def test_coprime(self):
        assert abelian.coprime([4], [9])
        assert not abelian.coprime([4], [6])
        assert not abelian.coprime([4], [0])
