#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "hullcode/evaluate.hpp"
#include "hullcode/generators.hpp"
#include "hullcode/greedy_hull.hpp"
#include "test_support.hpp"

using namespace hullcode;
using namespace testsupport;

TEST_CASE("hausdorff_one_sided") {
    SECTION("full subset gives zero") {
        PointSet ps = random_ball(12, 3, 21);
        std::vector<int> all(ps.size());
        for (int i = 0; i < ps.size(); ++i) all[i] = i;
        CHECK(hausdorff_one_sided(ps, all, HausdorffMode::oracle) <= 1e-9);
    }
    SECTION("triangle against one edge: the far vertex dominates") {
        PointSet ps({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
        std::vector<int> t{0, 1};
        CHECK(hausdorff_one_sided(ps, t, HausdorffMode::oracle) == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("approximate mode sandwiches the oracle") {
        Rng rng(22);
        for (int rep = 0; rep < 8; ++rep) {
            PointSet ps = random_ball(20, 3, 100 + rep);
            std::vector<int> t;
            for (int i = 0; i < ps.size(); i += rng.uniform_int(1, 3)) t.push_back(i);
            const double eps_fine = 0.1;
            const double oracle = hausdorff_one_sided(ps, t, HausdorffMode::oracle);
            const double approx =
                hausdorff_one_sided(ps, t, HausdorffMode::approximate, eps_fine);
            CHECK(approx >= oracle - 1e-9);
            CHECK(approx <= oracle + eps_fine * exact_diameter(ps) + 1e-9);
        }
    }
    SECTION("empty subset is an error") {
        PointSet ps(std::vector<std::vector<double>>{{0.0}});
        CHECK_THROWS_AS(hausdorff_one_sided(ps, std::vector<int>{}, HausdorffMode::oracle),
                        std::invalid_argument);
    }
}

TEST_CASE("gen_uniform_ball") {
    SECTION("norms stay inside the ball and runs are reproducible") {
        PointSet a = gen_uniform_ball(200, 7, 99);
        PointSet b = gen_uniform_ball(200, 7, 99);
        for (int i = 0; i < a.size(); ++i) CHECK(norm(a.point(i)) <= 1.0 + 1e-12);
        REQUIRE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
        PointSet c = gen_uniform_ball(200, 7, 100);
        CHECK_FALSE(std::equal(a.coords().begin(), a.coords().end(), c.coords().begin()));
    }
    SECTION("mean norm matches d/(d+1)") {
        PointSet ps = gen_uniform_ball(10000, 2, 7);
        double mean = 0.0;
        for (int i = 0; i < ps.size(); ++i) mean += norm(ps.point(i));
        mean /= ps.size();
        CHECK(mean == Catch::Approx(2.0 / 3.0).margin(0.02));
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(gen_uniform_ball(0, 3, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_uniform_ball(5, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("gen_klines") {
    SECTION("a single exact line is compressed to two points") {
        auto inst = gen_klines(1, 30, 4, 0.0, 31);
        auto res = greedy_cluster(inst.points, 1e-3);
        CHECK(res.selected.size() == 2);
        CHECK(hausdorff_one_sided(inst.points, res.selected, HausdorffMode::oracle) <= 1e-9);
    }
    SECTION("exact lines: the endpoint certificate is perfect") {
        auto inst = gen_klines(2, 100, 5, 0.0, 32);
        REQUIRE(inst.endpoints.size() == 4);
        PointSet cert(inst.endpoints);
        CHECK(hausdorff_one_sided(inst.points, cert, HausdorffMode::oracle) <= 1e-9);
    }
    SECTION("jittered lines: the certificate is within twice the strip") {
        auto inst = gen_klines(3, 120, 4, 1e-3, 33);
        PointSet cert(inst.endpoints);
        CHECK(hausdorff_one_sided(inst.points, cert, HausdorffMode::oracle) <= 2e-3);
        for (int i = 0; i < inst.points.size(); ++i)
            CHECK(norm(inst.points.point(i)) <= 1.0 + 1e-12);
    }
    SECTION("determinism and validation") {
        auto a = gen_klines(2, 40, 3, 0.01, 5);
        auto b = gen_klines(2, 40, 3, 0.01, 5);
        REQUIRE(std::equal(a.points.coords().begin(), a.points.coords().end(),
                           b.points.coords().begin()));
        CHECK_THROWS_AS(gen_klines(0, 10, 3, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_klines(3, 5, 3, 0.0, 1), std::invalid_argument); // n < 2k
        CHECK_THROWS_AS(gen_klines(1, 10, 3, -0.1, 1), std::invalid_argument);
    }
}

TEST_CASE("gen_sphere_packing") {
    SECTION("circle packing at spacing 0.5 lands in the expected range") {
        PointSet ps = gen_sphere_packing(2, 0.5, 11);
        CHECK(ps.size() >= 8);
        CHECK(ps.size() <= 13);
    }
    SECTION("pairwise spacing is enforced and points sit on the sphere") {
        PointSet ps = gen_sphere_packing(3, 0.4, 12);
        for (int i = 0; i < ps.size(); ++i) {
            CHECK(norm(ps.point(i)) == Catch::Approx(1.0).epsilon(1e-12));
            for (int j = i + 1; j < ps.size(); ++j)
                CHECK(dist(ps.point(i), ps.point(j)) >= 0.4 - 1e-12);
        }
    }
    SECTION("every circle-packing point is strictly outside the others' hull") {
        PointSet ps = gen_sphere_packing(2, 0.5, 13);
        for (int i = 0; i < ps.size(); ++i) {
            std::vector<int> others;
            for (int j = 0; j < ps.size(); ++j)
                if (j != i) others.push_back(j);
            CHECK(exact_project(ps, others, ps.point(i)).distance > 0.01);
        }
    }
    SECTION("determinism and validation") {
        PointSet a = gen_sphere_packing(3, 0.5, 3);
        PointSet b = gen_sphere_packing(3, 0.5, 3);
        REQUIRE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
        CHECK_THROWS_AS(gen_sphere_packing(1, 0.5, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_sphere_packing(5, 0.5, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_sphere_packing(3, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_sphere_packing(3, 1.0, 1), std::invalid_argument);
    }
}
