#include "doctest.h"

#include "dwork/linalg.hpp"
#include "support.hpp"

using namespace dwork;
using namespace dwork::testing;

namespace {

IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) {
        v.emplace_back(x);
    }
    return v;
}

// Rank over Q by an independent fraction-free route.
std::size_t rational_rank(const IntMatrix &m) {
    auto ctx = lambda_ctx();
    RatMatrix a;
    for (const auto &row : m) {
        RatVector r;
        for (const auto &x : row) {
            r.push_back(RatFunc::from_rational(Rational(x), ctx));
        }
        a.push_back(r);
    }
    RatVector zero(m.size(), RatFunc::zero(ctx));
    return ratfunc_solve_linear(a, zero, ctx).rank;
}

PointConfig config_of(std::size_t N, const std::vector<std::vector<Monomial>> &pts) {
    return PointConfig::from_exponents(N, pts);
}

} // namespace

TEST_CASE("Legendre point configuration") {
    Legendre L;
    const auto &c = L.config;
    REQUIRE(c.size() == 4);
    CHECK(c.points[0].d == Monomial{0, 2});
    CHECK(c.points[1].d == Monomial{3, 0});
    CHECK(c.points[2].d == Monomial{2, 0});
    CHECK(c.points[3].d == Monomial{1, 0});
    CHECK(c.delta == std::vector<std::size_t>{4});
    CHECK(c.index(0, 2) == 2);
}

TEST_CASE("Legendre relation lattice") {
    Legendre L;
    RelationBasis b = integer_kernel_basis(L.config);
    REQUIRE(b.vectors.size() == 1);
    CHECK(b.vectors[0] == iv({0, -1, 2, -1}));
    CHECK(relation_check(L.config, b.vectors[0]));
    CHECK(is_saturated(b.vectors));
}

TEST_CASE("small kernels") {
    // columns (1,0), (0,1), (1,1)
    IntMatrix m = {iv({1, 0, 1}), iv({0, 1, 1})};
    RelationBasis b = integer_kernel_basis(m);
    REQUIRE(b.vectors.size() == 1);
    CHECK(b.vectors[0] == iv({-1, -1, 1}));

    IntMatrix single = {iv({1}), iv({1})};
    CHECK(integer_kernel_basis(single).vectors.empty());
}

TEST_CASE("relation membership") {
    Legendre L;
    CHECK(relation_check(L.config, iv({0, -1, 2, -1})));
    CHECK_FALSE(relation_check(L.config, iv({1, 0, 0, 0})));
    CHECK(relation_check(L.config, iv({0, 0, 0, 0})));
    CHECK_THROWS_AS(relation_check(L.config, iv({1, 0})), PreconditionError);
}

TEST_CASE("box operators") {
    Legendre L;
    const auto &c = L.config;
    WeylOp box = box_from_relation(c, iv({0, -1, 2, -1}));
    CHECK(box == mu_derivative(c, 2, 2) - mu_derivative(c, 1) * mu_derivative(c, 3));
    CHECK(box.str() == "-d_mu_2*d_mu_4 + d_mu_3^2");
    CHECK(box_from_relation(c, iv({0, 0, 0, 0})).is_zero());
    CHECK(box_from_relation(c, iv({0, 1, -2, 1})) == -box);

    PointConfig two = config_of(1, {{Monomial{1}, Monomial{1}}});
    CHECK(box_from_relation(two, iv({1, -1})) == mu_derivative(two, 0) - mu_derivative(two, 1));
}

TEST_CASE("saturation detects index") {
    CHECK(is_saturated({iv({2, 1})}));
    CHECK_FALSE(is_saturated({iv({2, 4})}));
    CHECK_FALSE(is_saturated({iv({1, 1, 0}), iv({1, -1, 0})}));
    CHECK(is_saturated({iv({1, 1, 0}), iv({0, 1, 1})}));
}

TEST_CASE("random configurations: kernel basis properties") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<unsigned> e(0, 3);
    std::uniform_int_distribution<int> nterms(1, 5);
    for (int round = 0; round < 40; ++round) {
        std::size_t N = 1 + round % 3;
        std::size_t r = 1 + round % 2;
        std::vector<std::vector<Monomial>> pts(r);
        for (auto &pj : pts) {
            int n = nterms(rng);
            for (int t = 0; t < n; ++t) {
                Monomial m(N);
                for (auto &x : m) {
                    x = e(rng);
                }
                if (std::find(pj.begin(), pj.end(), m) == pj.end()) {
                    pj.push_back(m);
                }
            }
        }
        PointConfig c = config_of(N, pts);
        RelationBasis b = integer_kernel_basis(c);
        for (const auto &v : b.vectors) {
            CHECK(relation_check(c, v));
            auto first = std::find_if(v.begin(), v.end(), [](const Integer &x) { return x != 0; });
            REQUIRE(first != v.end());
            CHECK(*first < 0);
            CHECK(box_from_relation(c, v) == -box_from_relation(c, [&] {
                      IntVector w = v;
                      for (auto &x : w) {
                          x = -x;
                      }
                      return w;
                  }()));
        }
        CHECK(b.vectors.size() == c.size() - rational_rank(c.matrix()));
        CHECK(is_saturated(b.vectors));
    }
}
