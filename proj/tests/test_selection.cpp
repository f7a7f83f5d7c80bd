#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "ballcover/counterexample.hpp"
#include "ballcover/harness.hpp"
#include "ballcover/selection.hpp"
#include "oracles.hpp"

using namespace ballcover;
using std::numbers::pi;

namespace {

BallCollection planar(std::initializer_list<std::array<double, 3>> disks) {
    BallCollection c(2);
    for (const auto& d : disks) {
        c.push_back(Ball({d[0], d[1]}, d[2]));
    }
    return c;
}

BallCollection permuted(const BallCollection& c, std::uint64_t seed) {
    std::vector<std::size_t> idx(c.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
    }
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    return c.subset(idx);
}

void expect_partition(const SelectionResult& s, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const auto& g : s.groups) {
        for (std::size_t i : g.members) {
            ++seen[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(seen[i], 1) << "input " << i << " in no group";
    }
    EXPECT_EQ(std::set<std::size_t>(s.selected.begin(), s.selected.end()).size(), s.selected.size());
}

bool same_result(const SelectionResult& a, const SelectionResult& b) {
    if (a.selected != b.selected || a.groups.size() != b.groups.size() || a.families != b.families) {
        return false;
    }
    for (std::size_t i = 0; i < a.groups.size(); ++i) {
        if (a.groups[i].representative != b.groups[i].representative || a.groups[i].members != b.groups[i].members) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(Vitali, OneBall) {
    const auto s = vitali_select(planar({{0, 0, 1}}));
    EXPECT_EQ(s.selected, std::vector<std::size_t>{0});
    ASSERT_EQ(s.groups.size(), 1u);
    EXPECT_EQ(s.groups[0].members, std::vector<std::size_t>{0});
    EXPECT_THROW(vitali_select(BallCollection(2)), std::invalid_argument);
}

TEST(Vitali, RingedBallSelectsOnlyTheBigBall) {
    const auto s = vitali_select(build_fig1(40, 0.05));
    EXPECT_EQ(s.selected, std::vector<std::size_t>{0});
}

TEST(Vitali, DisjointAndDominatingGroups) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        for (std::uint64_t p = 0; p < 3; ++p) {
            const auto c = p == 0 ? random_collection(2, 1, i) : permuted(random_collection(2, 1, i), p);
            const auto s = vitali_select(c);
            expect_partition(s, c.size());
            for (std::size_t a = 0; a < s.selected.size(); ++a) {
                for (std::size_t b = a + 1; b < s.selected.size(); ++b) {
                    EXPECT_TRUE(disjoint(c[s.selected[a]], c[s.selected[b]]));
                }
            }
            for (const auto& g : s.groups) {
                for (std::size_t m : g.members) {
                    EXPECT_FALSE(m != g.representative && disjoint(c[m], c[g.representative]));
                    EXPECT_LE(c[m].radius(), c[g.representative].radius());
                }
            }
        }
    }
}

TEST(Vitali, FiveFoldCoverBySampling) {
    std::mt19937_64 rng(12);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto c = random_collection(2, 2, i);
        const auto s = vitali_select(c);
        std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
        std::normal_distribution<double> g(0.0, 1.0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int misses = 0;
        for (int t = 0; t < 10000; ++t) {
            const Ball& b = c[pick(rng)];
            const double a = 2 * pi * u(rng);
            const double r = b.radius() * std::sqrt(u(rng));
            const double x = b.center(0) + r * std::cos(a);
            const double y = b.center(1) + r * std::sin(a);
            bool hit = false;
            for (std::size_t k : s.selected) {
                const Ball& S = c[k];
                const double dx = x - S.center(0);
                const double dy = y - S.center(1);
                hit = hit || dx * dx + dy * dy < 25.0 * S.radius() * S.radius();
            }
            misses += hit ? 0 : 1;
        }
        EXPECT_EQ(misses, 0) << "instance " << i;
    }
}

TEST(Besicovitch, SmallCases) {
    const auto a = besicovitch_select(planar({{0, 0, 1}, {5, 0, 1}}));
    EXPECT_EQ(a.selected.size(), 2u);
    ASSERT_TRUE(a.families);
    EXPECT_EQ(a.families->size(), 1u);
    const auto b = besicovitch_select(planar({{0, 0, 1}, {0.5, 0, 1}}));
    EXPECT_EQ(b.selected, std::vector<std::size_t>{0});
    EXPECT_THROW(besicovitch_select(BallCollection(2)), std::invalid_argument);
}

TEST(Besicovitch, ExtraFactOnLargeCorpora) {
    std::size_t max_families = 0;
    for (std::uint64_t i = 0; i < 60; ++i) {
        const auto c = random_collection(2, 3, i, 100, 200);
        const auto s = besicovitch_select(c);
        expect_partition(s, c.size());
        for (const auto& g : s.groups) {
            const Ball& S = c[g.representative];
            for (std::size_t m : g.members) {
                EXPECT_LE(center_distance(c[m], S), S.radius());
                EXPECT_LE(c[m].radius(), 8.0 / 7.0 * S.radius() + 1e-12);
            }
        }
        for (const auto& fam : *s.families) {
            for (std::size_t a = 0; a < fam.size(); ++a) {
                for (std::size_t b = a + 1; b < fam.size(); ++b) {
                    EXPECT_TRUE(disjoint(c[fam[a]], c[fam[b]]));
                }
            }
        }
        std::size_t total = 0;
        for (const auto& fam : *s.families) {
            total += fam.size();
        }
        EXPECT_EQ(total, s.selected.size());
        max_families = std::max(max_families, s.families->size());
    }
    EXPECT_LE(max_families, 19u);
}

TEST(PerimeterBesicovitch, OneBall) {
    const auto s = perimeter_besicovitch_select(planar({{1, 2, 3}}));
    EXPECT_EQ(s.selected, std::vector<std::size_t>{0});
}

TEST(PerimeterBesicovitch, PrefersTheTinyBalls) {
    const auto c = build_fig1(100, 0.02);
    const auto s = perimeter_besicovitch_select(c);
    EXPECT_EQ(std::count(s.selected.begin(), s.selected.end(), 0u), 0);
    double tiny = 0.0;
    for (std::size_t i : s.selected) {
        tiny += ball_surface(c[i]);
    }
    EXPECT_GE(tiny, ball_surface(c[0]));
}

TEST(PerimeterBesicovitch, SelectedFamilyIsDisjointAndHasLargestSurface) {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto c = random_collection(2, 4, i);
        const auto s = perimeter_besicovitch_select(c);
        double mine = 0.0;
        for (std::size_t k : s.selected) {
            mine += ball_surface(c[k]);
        }
        for (const auto& fam : *s.families) {
            double other = 0.0;
            for (std::size_t k : fam) {
                other += ball_surface(c[k]);
            }
            EXPECT_LE(other, mine);
        }
        const double lhs = union_perimeter_2d(c).value;
        const double rhs = union_perimeter_2d(c.subset(s.selected)).value;
        EXPECT_GT(rhs, 0.0);
        EXPECT_TRUE(std::isfinite(lhs / rhs));
    }
}

TEST(PerimeterVitali, EpsMaxAgainstIndependentScan) {
    const double em = perimeter_vitali_eps_max(2);
    double scan = 1e300;
    for (int i = 1; i <= 2000; ++i) {
        const double q = i / 2000.0;
        scan = std::min(scan, oracle::lens(1.0, q, 6.0 / 7.0 * (1.0 + q), 2) / (pi * q * q));
    }
    EXPECT_LE(em, scan * (1 + 1e-9));
    EXPECT_NEAR(em, scan, 1e-4 * scan);
    EXPECT_GT(em, 0.0);
}

TEST(PerimeterVitali, ThresholdForcesSixSeventhsSeparation) {
    const double em = perimeter_vitali_eps_max(2);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> r(0.05, 1.0);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double r1 = r(rng);
        const double r2 = r(rng);
        const double rho = (r1 + r2) * t(rng);
        const double lens = lens_volume(r1, r2, rho, 2);
        if (lens <= 0.999 * em * pi * std::min(r1, r2) * std::min(r1, r2)) {
            EXPECT_GE(rho, 6.0 / 7.0 * (r1 + r2) - 1e-12);
        }
    }
}

TEST(PerimeterVitali, DisjointInputSelectsEverything) {
    const auto c = planar({{0, 0, 1}, {3, 0, 0.5}, {0, 4, 0.2}});
    const auto s = perimeter_vitali_select(c, 0.01);
    EXPECT_EQ(s.selected.size(), 3u);
    EXPECT_NEAR(s.params.overlap_threshold, 0.01 * 49.0 / 64.0, 1e-17);
    EXPECT_NEAR(s.params.enlargement, 23.0 / 7.0, 1e-15);
}

TEST(PerimeterVitali, OverlapExactlyAtThresholdIsNotACandidate) {
    // Find (rho, eps) with fl(fl((7/8)^2 eps) π) equal to the lens value bit for bit.
    const double f = std::pow(7.0 / 8.0, 2.0);
    double rho = 1.85;
    double eps = 0.0;
    bool found = false;
    for (int k = 0; k < 1000 && !found; ++k) {
        rho = 1.85 + 1e-4 * k;
        const double lens = lens_volume(1.0, 1.0, rho, 2);
        eps = lens / (f * pi);
        for (int u = 0; u < 16; ++u) {
            eps = std::nextafter(eps, 0.0);
        }
        for (int u = 0; u < 32; ++u) {
            if (f * eps * ball_volume(1.0, 2) == lens) {
                found = true;
                break;
            }
            eps = std::nextafter(eps, 1.0);
        }
    }
    ASSERT_TRUE(found);
    ASSERT_LT(eps, perimeter_vitali_eps_max(2));
    const auto c = planar({{0, 0, 1}, {rho, 0, 1}});
    const auto s = perimeter_vitali_select(c, eps);
    EXPECT_EQ(s.selected, std::vector<std::size_t>{0});
    EXPECT_EQ(s.groups[0].members, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(perimeter_vitali_select(c, eps * (1 - 1e-6)).selected, std::vector<std::size_t>{0});
    EXPECT_EQ(perimeter_vitali_select(c, eps * (1 + 1e-6)).selected.size(), 2u);
}

TEST(PerimeterVitali, RejectsEpsOutOfRange) {
    const auto c = planar({{0, 0, 1}});
    EXPECT_THROW(perimeter_vitali_select(c, 0.0), std::invalid_argument);
    EXPECT_THROW(perimeter_vitali_select(c, perimeter_vitali_eps_max(2)), std::invalid_argument);
    EXPECT_THROW(perimeter_vitali_select(BallCollection(2), 0.01), std::invalid_argument);
}

TEST(PerimeterVitali, GuaranteesOnRandomCorpora) {
    const double em = perimeter_vitali_eps_max(2);
    for (std::uint64_t i = 0; i < 60; ++i) {
        const auto base = random_collection(2, 7, i);
        for (double f : {0.01, 0.3, 0.99}) {
            const double eps = f * em;
            const auto c = (i % 2) ? permuted(base, i) : base;
            const auto s = perimeter_vitali_select(c, eps);
            expect_partition(s, c.size());
            for (std::size_t a = 0; a < s.selected.size(); ++a) {
                for (std::size_t b = a + 1; b < s.selected.size(); ++b) {
                    const Ball& p = c[s.selected[a]];
                    const Ball& q = c[s.selected[b]];
                    const double m = std::min(ball_volume(p), ball_volume(q));
                    EXPECT_LE(lens_volume(p, q), eps * m * (1 + 1e-9));
                    EXPECT_GE(center_distance(p, q), 6.0 / 7.0 * (p.radius() + q.radius()) - 1e-12);
                }
            }
            for (const auto& g : s.groups) {
                const Ball& S = c[g.representative];
                for (std::size_t m : g.members) {
                    EXPECT_LE(center_distance(c[m], S) + c[m].radius(), 23.0 / 7.0 * S.radius() + 1e-12);
                }
            }
        }
    }
}

TEST(Interval1d, WorkedExample) {
    const std::vector<Interval> iv{{0, 10}, {1, 2}, {20, 21}};
    const auto s = interval_select_1d(iv);
    EXPECT_EQ(s.selected, (std::vector<std::size_t>{0, 2}));
    ASSERT_EQ(s.groups.size(), 2u);
    EXPECT_EQ(s.groups[0].members, (std::vector<std::size_t>{0, 1}));
    std::vector<Interval> chosen{iv[0], iv[2]};
    EXPECT_DOUBLE_EQ(union_measure_1d(iv), 11.0);
    EXPECT_LE(union_measure_1d(iv), 5 * union_measure_1d(chosen));
    EXPECT_EQ(union_boundary_1d(iv), 4u);
    EXPECT_EQ(union_boundary_1d(chosen), 4u);
}

TEST(Interval1d, SingleInterval) {
    const std::vector<Interval> iv{{-1, 1}};
    const auto s = interval_select_1d(iv);
    EXPECT_EQ(s.selected, std::vector<std::size_t>{0});
    EXPECT_EQ(union_boundary_1d(iv), 2u);
    EXPECT_THROW(interval_select_1d(std::vector<Interval>{}), std::invalid_argument);
}

TEST(Interval1d, Chain) {
    // 0.875 is a dyadic step, so every link has length exactly 1 and ties
    // fall back to input order.
    for (double step : {0.9, 0.875}) {
        std::vector<Interval> iv;
        for (int k = 0; k < 10; ++k) {
            iv.emplace_back(step * k, step * k + 1.0);
        }
        const auto s = interval_select_1d(iv);
        std::vector<Interval> chosen;
        for (std::size_t i : s.selected) {
            chosen.push_back(iv[i]);
        }
        auto sorted = s.selected;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t j = 1; j < sorted.size(); ++j) {
            EXPECT_GE(sorted[j] - sorted[j - 1], 2u);
            if (step == 0.875) {
                EXPECT_EQ(sorted[j] - sorted[j - 1], 2u);
            }
        }
        EXPECT_EQ(union_boundary_1d(iv), 2u);
        EXPECT_GE(union_boundary_1d(chosen), 2u);
        EXPECT_LE(union_measure_1d(iv), 5 * union_measure_1d(chosen));
    }
}

TEST(Interval1d, GuaranteesUnderPermutation) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto iv = random_intervals(8, i);
        std::mt19937_64 rng(i);
        for (int p = 0; p < 3; ++p) {
            std::shuffle(iv.begin(), iv.end(), rng);
            const auto s = interval_select_1d(iv);
            std::vector<Interval> chosen;
            for (std::size_t k : s.selected) {
                chosen.push_back(iv[k]);
            }
            for (std::size_t a = 0; a < chosen.size(); ++a) {
                for (std::size_t b = a + 1; b < chosen.size(); ++b) {
                    EXPECT_FALSE(chosen[a].closure_meets(chosen[b]));
                }
            }
            EXPECT_LE(union_measure_1d(iv), 5 * union_measure_1d(chosen));
            EXPECT_LE(union_boundary_1d(iv), union_boundary_1d(chosen));
            for (const auto& g : s.groups) {
                const Interval five = iv[g.representative].dilated(5.0);
                std::vector<Interval> members;
                for (std::size_t m : g.members) {
                    EXPECT_TRUE(five.contains(iv[m]));
                    members.push_back(iv[m]);
                }
                EXPECT_LE(union_boundary_1d(members), 2u);
            }
        }
    }
}

TEST(Selection, Deterministic) {
    const auto c = random_collection(2, 11, 3, 30, 40);
    EXPECT_TRUE(same_result(vitali_select(c), vitali_select(c)));
    EXPECT_TRUE(same_result(besicovitch_select(c), besicovitch_select(c)));
    EXPECT_TRUE(same_result(perimeter_besicovitch_select(c), perimeter_besicovitch_select(c)));
    EXPECT_TRUE(same_result(perimeter_vitali_select(c, 0.01), perimeter_vitali_select(c, 0.01)));
    const auto iv = random_intervals(11, 3);
    EXPECT_TRUE(same_result(interval_select_1d(iv), interval_select_1d(iv)));
}

TEST(Selection, TiesGoToTheEarlierInput) {
    const auto s = vitali_select(planar({{0, 0, 1}, {1, 0, 1}}));
    EXPECT_EQ(s.selected, std::vector<std::size_t>{0});
    const auto t = vitali_select(planar({{1, 0, 1}, {0, 0, 1}}));
    EXPECT_EQ(t.selected, std::vector<std::size_t>{0});
}
