# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import math

import pytest

from omegafull.analysis import (
    L_formula,
    L_max,
    L_profile,
    asymptotic_point,
    growth_ratio,
    growth_report,
    h,
    maximize_h,
    michel_baseline,
    surjection_table,
    surjections,
    temme_M,
    temme_x,
)

H_STAR = 0.7645
BETA_STAR, GAMMA_STAR = 0.7236, 0.5744


class TestCounting:
    @pytest.mark.parametrize("t, m, value", [(0, 0, 1), (3, 2, 6), (4, 2, 14), (3, 3, 6), (2, 3, 0)])
    def test_surjections(self, t, m, value):
        assert surjections(t, m) == value

    def test_table_matches_inclusion_exclusion(self):
        table = surjection_table(7)
        for t in range(8):
            for m in range(t + 1):
                assert table[t][m] == surjections(t, m)

    def test_negative_input(self):
        with pytest.raises(ValueError):
            surjections(-1, 2)

    def test_small_L(self):
        assert L_max(2) == (1, 1)
        assert L_max(3) == (1, 3)
        assert L_max(4) == (2, 18)
        assert L_profile(4) == {1: 7, 2: 18, 3: 6}

    def test_all_odd_ranks(self):
        # m = n-1 puts the n-1 main states on distinct odd ranks
        for n in range(2, 8):
            assert L_formula(n, n - 1) == math.factorial(n - 1)

    @pytest.mark.parametrize("n, m", [(1, 1), (4, 0), (4, 4)])
    def test_invalid_nm(self, n, m):
        with pytest.raises(ValueError):
            L_formula(n, m)

    def test_michel_baseline(self):
        assert michel_baseline(1) == (1.0, 1 / math.e)
        with pytest.raises(ValueError):
            michel_baseline(0)

    def test_growth_report(self):
        rows = growth_report([3, 4])
        assert [(r["n"], r["m"], r["digits"]) for r in rows] == [(3, 1, 1), (4, 2, 2)]
        assert rows[1]["growth"] == pytest.approx(18 ** 0.25 / 4)

    @pytest.mark.slow
    def test_growth_approaches_h(self):
        assert abs(growth_ratio(128) - H_STAR) <= 0.05


class TestAsymptotics:
    def test_temme_x(self):
        assert temme_x(0.5) == pytest.approx(1.5936, abs=1e-4)
        x = temme_x(0.1)
        assert 0.1 * x == pytest.approx(1 - math.exp(-x))

    def test_temme_M_limit(self):
        assert temme_M(1.0) == 1 / math.e
        assert temme_M(0.999) == pytest.approx(1 / math.e, abs=1e-2)

    @pytest.mark.parametrize("beta", [0.0, 1.0, -0.5])
    def test_temme_x_domain(self, beta):
        with pytest.raises(ValueError):
            temme_x(beta)

    def test_h_at_reference_point(self):
        assert h(BETA_STAR, GAMMA_STAR) == pytest.approx(H_STAR, abs=1e-3)
        point = asymptotic_point(BETA_STAR, GAMMA_STAR)
        assert point.h == h(BETA_STAR, GAMMA_STAR)
        assert point.x > 0

    @pytest.mark.parametrize("beta, gamma", [(0.5, 0.6), (1.0, 0.5), (0.5, 0.0)])
    def test_h_domain(self, beta, gamma):
        with pytest.raises(ValueError):
            h(beta, gamma)

    def test_maximize_h(self):
        point = maximize_h(grid_step=0.005)
        assert point.h == pytest.approx(H_STAR, abs=1e-3)
        assert point.beta == pytest.approx(BETA_STAR, abs=1e-2)
        assert point.gamma == pytest.approx(GAMMA_STAR, abs=1e-2)
        assert point.h >= h(BETA_STAR, GAMMA_STAR) - 1e-6

    def test_maximize_h_grid_step(self):
        with pytest.raises(ValueError):
            maximize_h(grid_step=0.6)
