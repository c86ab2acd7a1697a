#include <catch2/catch_amalgamated.hpp>

#include <randvol/corpus.hpp>
#include <randvol/moments.hpp>

using namespace randvol;
using Catch::Approx;

namespace {

Body triangle_body() { return make_polygon(Poly{{0, 0}, {1, 0}, {0, 1}}); }

void check_z(const MomentEstimate& E, double ref, double z = 4.0, double bias = 0.0) {
    INFO("estimate " << E.value << " +- " << E.stderr_ << " vs " << ref);
    CHECK(std::abs(E.value - ref) <= z * E.stderr_ + bias);
}

}  // namespace

TEST_CASE("kappa for real indices extends the integer volumes") {
    for (int d = 0; d <= 10; ++d) CHECK(kappa_real(d) == Approx(kappa(d)).epsilon(1e-13));
    CHECK(kappa_real(1) == Approx(2).epsilon(1e-13));
    CHECK(kappa_real(2) == Approx(M_PI).epsilon(1e-13));
    CHECK(std::exp(log_kappa(7.5)) == Approx(kappa_real(7.5)).epsilon(1e-12));
}

TEST_CASE("ball moment closed forms") {
    CHECK(ball_moment(2, 1, BallMomentKind::full_simplex) ==
          Approx(35.0 / (48 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(ball_moment(2, 1, BallMomentKind::centroid) ==
          Approx(4.0 / (9 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(ball_moment(2, 2, BallMomentKind::centroid) ==
          Approx(1.0 / (32 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(ball_moment(3, 1, BallMomentKind::full_simplex) == Approx(9.0 / 715).epsilon(1e-12));
    // the uncorrected variant differs from the shipped one by (d!)^p
    CHECK(ball_moment_printed_centroid(2, 1) ==
          Approx(2 * ball_moment(2, 1, BallMomentKind::centroid)).epsilon(1e-12));
    CHECK(ball_moment_printed_centroid(2, 2) ==
          Approx(4 * ball_moment(2, 2, BallMomentKind::centroid)).epsilon(1e-12));
    CHECK(ball_moment_printed_centroid(3, 1) ==
          Approx(6 * ball_moment(3, 1, BallMomentKind::centroid)).epsilon(1e-12));
}

TEST_CASE("shipped centroid variant matches sampling, the rejected one fails") {
    Body B2 = standard_body("ball", 2);
    MomentEstimate E = estimate_moment(B2, FunctionalSpec::centroid_k(1.0), 200000, 501);
    check_z(E, ball_moment(2, 1, BallMomentKind::centroid));
    double zbad = std::abs(E.value - ball_moment_printed_centroid(2, 1)) / E.stderr_;
    CHECK(zbad > 10);
}

TEST_CASE("triangle moments are exact rationals") {
    ReedValue r1 = reed_moment(1);
    CHECK(r1.exact.num == 1);
    CHECK(r1.exact.den == 12);
    CHECK(r1.value == Approx(1.0 / 12).epsilon(1e-15));
    ReedValue r2 = reed_moment(2);
    CHECK(r2.exact.num == 1);
    CHECK(r2.exact.den == 72);
    ReedValue r3 = reed_moment(3);
    CHECK(r3.exact.num == 31);
    CHECK(r3.exact.den == 9000);
    ReedValue r4 = reed_moment(4);
    CHECK(r4.exact.num == 1);
    CHECK(r4.exact.den == 900);
    ReedValue r5 = reed_moment(5);
    CHECK(r5.exact.num == 1063);
    CHECK(r5.exact.den == 2469600);
    CHECK_THROWS_AS(reed_moment(0), std::invalid_argument);
    CHECK_THROWS_AS(reed_moment(-3), std::invalid_argument);
    CHECK_THROWS_AS(reed_moment(40), std::invalid_argument);
}

TEST_CASE("triangle estimates agree with the exact values") {
    Body T = triangle_body();
    MomentEstimate E1 = estimate_moment(T, FunctionalSpec::full_n(3, 1.0), 2000000, 601);
    CHECK(E1.stderr_ <= 2e-4);
    check_z(E1, 1.0 / 12);
    MomentEstimate E2 = estimate_moment(T, FunctionalSpec::full_n(3, 2.0), 500000, 602);
    check_z(E2, 1.0 / 72);
}

TEST_CASE("square estimates agree with the classical constants") {
    // mean triangle area 11/144, mean 4-point hull area 11/72 (unit square)
    Body S = make_polygon(Poly{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    check_z(estimate_moment(S, FunctionalSpec::full_n(3, 1.0), 1000000, 603), 11.0 / 144);
    check_z(estimate_moment(S, FunctionalSpec::full_n(4, 1.0), 1000000, 604), 11.0 / 72);
}

TEST_CASE("ball estimates agree with the closed forms") {
    Body B2 = standard_body("ball", 2);
    check_z(estimate_moment(B2, FunctionalSpec::full_n(3, 1.0), 500000, 605),
            ball_moment(2, 1, BallMomentKind::full_simplex));
    // polygonal disc carries a small discretization bias
    Body disc = family_generator("spindle", 0.0, 512);
    check_z(estimate_moment(disc, FunctionalSpec::full_n(3, 1.0), 500000, 606),
            ball_moment(2, 1, BallMomentKind::full_simplex), 4.0, 1e-4);
    // d=3, p=1, vertex pinned at the center
    Body B3 = standard_body("ball", 3);
    check_z(estimate_moment(B3, FunctionalSpec::centroid_k(1.0), 1000000, 607),
            ball_moment(3, 1, BallMomentKind::centroid));
    check_z(estimate_moment(B3, FunctionalSpec::full_n(4, 1.0), 500000, 608),
            ball_moment(3, 1, BallMomentKind::full_simplex));
}

TEST_CASE("pinning at the centroid equals pinning at that point") {
    Body S = standard_body("square", 2);  // centroid at the origin
    MomentEstimate a = estimate_moment(S, FunctionalSpec::centroid_k(1.0), 100000, 609);
    MomentEstimate b = estimate_moment(S, FunctionalSpec::fixed({0.0, 0.0}, 1.0), 100000, 609);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("estimator input validation") {
    Body S = standard_body("square", 2);
    CHECK_THROWS_AS(estimate_moment(S, FunctionalSpec::full_n(3, 1.0), 500, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_moment(S, FunctionalSpec::full_n(2, 1.0), 10000, 1),
                    std::invalid_argument);
    Body B3 = standard_body("ball", 3);
    CHECK_THROWS_AS(estimate_moment(B3, FunctionalSpec::full_n(5, 1.0), 10000, 1),
                    std::invalid_argument);
}

TEST_CASE("estimates are thread-count independent and scale-free") {
    Body T = triangle_body();
    FunctionalSpec spec = FunctionalSpec::full_n(3, 1.0);
    MomentEstimate a = estimate_moment(T, spec, 300000, 610, 1);
    MomentEstimate b = estimate_moment(T, spec, 300000, 610, 3);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);

    // doubling is exact in binary floating point: bitwise equal statistic
    Body T2 = affine_apply(MatD{{2, 0}, {0, 2}}, {0, 0}, T);
    MomentEstimate c = estimate_moment(T2, spec, 300000, 610, 1);
    CHECK(c.value == a.value);
    CHECK(c.stderr_ == a.stderr_);

    // a generic scale agrees to rounding
    Body T17 = affine_apply(MatD{{1.7, 0}, {0, 1.7}}, {0, 0}, T);
    MomentEstimate d = estimate_moment(T17, spec, 300000, 610, 1);
    CHECK(d.value == Approx(a.value).epsilon(1e-12));
}

TEST_CASE("joint estimation reports a covariance of the means") {
    Body S = standard_body("square", 2);
    std::vector<FunctionalSpec> specs{FunctionalSpec::full_n(3, 1.0),
                                      FunctionalSpec::full_n(3, 2.0),
                                      FunctionalSpec::centroid_k(1.0)};
    ManyResult M = estimate_many(S, specs, 200000, 611);
    REQUIRE(M.est.size() == 3);
    REQUIRE(M.cov.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(M.cov[i][i] == Approx(M.est[i].stderr_ * M.est[i].stderr_).epsilon(1e-9));
        for (int j = 0; j < i; ++j) CHECK(M.cov[i][j] == Approx(M.cov[j][i]).margin(1e-18));
    }
    // the p=1 and p=2 statistics of the same trials are strongly correlated
    double corr = M.cov[0][1] / (M.est[0].stderr_ * M.est[1].stderr_);
    CHECK(corr > 0.5);
    // shared trials also mean identical marginals vs a standalone run
    MomentEstimate solo = estimate_moment(S, specs[0], 200000, 611);
    CHECK(M.est[0].value == solo.value);
}

TEST_CASE("family estimation pairs trials across bodies") {
    std::vector<Body> fam{standard_body("square", 2),
                          affine_apply(MatD{{0.9, 0}, {0, 1.1}}, {0, 0},
                                       standard_body("square", 2))};
    std::vector<FunctionalSpec> specs{FunctionalSpec::full_n(3, 1.0)};
    std::vector<FamilyCombo> combos{{{{0, 0, 1.0}, {1, 0, -1.0}}}};
    FamilyResult F = estimate_family(fam, specs, 100000, 612, combos);
    REQUIRE(F.est.size() == 2);
    // the combo (+K0, -K1) is the negated paired difference (K1 - K0)
    CHECK(F.combos[0].first == Approx(-F.paired[1][0].first).margin(1e-15));
    CHECK(F.combos[0].second == Approx(F.paired[1][0].second).epsilon(1e-12));
    // pairing beats independent errors for nearby bodies
    double indep = std::hypot(F.est[0][0].stderr_, F.est[1][0].stderr_);
    CHECK(F.paired[1][0].second < indep);
    // affine images share the statistic's law; 4 sigma on the paired difference
    CHECK(std::abs(F.paired[1][0].first) <= 4 * F.paired[1][0].second);
    CHECK_THROWS_AS(estimate_family({standard_body("ball", 2)}, specs, 10000, 1),
                    std::invalid_argument);
}

TEST_CASE("isotropy constants") {
    // exact inertia route for polygons
    IsotropyResult sq = isotropy_constant(standard_body("square", 2), 0, 0);
    CHECK(sq.exact);
    CHECK(sq.L == Approx(1.0 / std::sqrt(12.0)).epsilon(1e-12));
    IsotropyResult tri = isotropy_constant(triangle_body(), 0, 0);
    CHECK(tri.L == Approx(std::pow(108.0, -0.25)).epsilon(1e-12));
    IsotropyResult disc = isotropy_constant(family_generator("spindle", 0.0, 512), 0, 0);
    CHECK(disc.L == Approx(1.0 / (2 * std::sqrt(M_PI))).epsilon(1e-4));
    // affine invariance of the exact route
    Body sheared = affine_apply(MatD{{1, 3}, {0, 1}}, {5, -2}, standard_body("square", 2));
    CHECK(isotropy_constant(sheared, 0, 0).L == Approx(sq.L).epsilon(1e-10));
    // sampled route for non-polygons
    IsotropyResult ball = isotropy_constant(standard_body("ball", 2), 400000, 613);
    CHECK_FALSE(ball.exact);
    CHECK(ball.stderr_ > 0);
    CHECK(std::abs(ball.L - 1.0 / (2 * std::sqrt(M_PI))) <= 4 * ball.stderr_);
}

TEST_CASE("identity and inequality slacks on one shared stream") {
    Body T = triangle_body();
    IdentityReport R = identity_report(T, 2.0, 3.0, 400000, 614);
    REQUIRE(R.est.size() == 3);
    bool saw_identity = false;
    for (const Slack& s : R.slacks) {
        INFO(s.name << " = " << s.value << " +- " << s.stderr_);
        if (s.name == "identity_2*") {
            saw_identity = true;
            CHECK(std::abs(s.value) <= 4 * s.stderr_);
        } else {
            CHECK(s.value >= -4 * s.stderr_);
        }
    }
    CHECK(saw_identity);
    // (2*) ties the triangle values to the exact table: E^2_* = reed(2)/3
    check_z(R.est[0], reed_moment(2).value / 3);

    IdentityReport Rq = identity_report(random_polygon(7, 99), 1.0, 2.0, 200000, 615);
    for (const Slack& s : Rq.slacks) CHECK(s.value >= -4 * s.stderr_);

    CHECK_THROWS_AS(identity_report(T, 0.5, 2.0, 10000, 1), std::invalid_argument);
    CHECK_THROWS_AS(identity_report(T, 2.0, 2.0, 10000, 1), std::invalid_argument);
}

TEST_CASE("second-moment bound for simplices") {
    CHECK(simplex_second_moment_bound(1) == Approx(1).epsilon(1e-14));
    CHECK(simplex_second_moment_bound(2) == Approx(0.5).epsilon(1e-14));
    CHECK(simplex_second_moment_bound(3) == Approx(1.0 / 6).epsilon(1e-14));
    // T^2 attains 1/216, far below 1/2
    Body T2 = standard_body("simplex", 2);
    MomentEstimate E2 = estimate_moment(T2, FunctionalSpec::centroid_k(2.0), 200000, 616);
    check_z(E2, 1.0 / 216);
    for (int d = 2; d <= 6; ++d) {
        Body Td = standard_body("simplex", d);
        MomentEstimate E = estimate_moment(Td, FunctionalSpec::centroid_k(2.0), 100000, 616 + d);
        INFO("d = " << d);
        CHECK(E.value <= simplex_second_moment_bound(d) + 4 * E.stderr_);
    }
}
