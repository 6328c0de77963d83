#include <catch2/catch_amalgamated.hpp>
#include "folint/extension.hpp"
#include "folint/parse.hpp"

using namespace folint;

static const GradingContext AFF{Surf::Affine, 0};

static MultiPoly A(const std::string& s) { return parse_poly(s, AFF); }

TEST_CASE("degenerate extensions to F_delta") {
    GradingContext h1{Surf::Hirzebruch, 1};
    auto H1 = [&](const std::string& s) { return parse_poly(s, h1); };

    // dx -> -X1 dX0 + X0 dX1, degrees (delta, -2)
    OneForm dx = extend_to_hirzebruch(A("1"), A("0"), 1);
    CHECK(dx.w[0] == H1("-X1"));
    CHECK(dx.w[1] == H1("X0"));
    CHECK(dx.w[2].is_zero());
    CHECK(dx.w[3].is_zero());
    CHECK(hirzebruch_degrees(dx) == std::pair<long, long>(1, -2));

    // dy -> delta Y0Y1 dX0 - X0Y1 dY0 + X0Y0 dY1
    OneForm dy = extend_to_hirzebruch(A("0"), A("1"), 1);
    CHECK(dy.w[0] == H1("Y0*Y1"));
    CHECK(dy.w[1].is_zero());
    CHECK(dy.w[2] == H1("-X0*Y1"));
    CHECK(dy.w[3] == H1("X0*Y0"));
    CHECK(hirzebruch_degrees(dy) == std::pair<long, long>(-1, 0));

    GradingContext h0{Surf::Hirzebruch, 0};
    auto H0 = [&](const std::string& s) { return parse_poly(s, h0); };
    OneForm dy0 = extend_to_hirzebruch(A("0"), A("1"), 0);
    CHECK(dy0.w[0].is_zero());
    CHECK(dy0.w[1].is_zero());
    CHECK(dy0.w[2] == H0("-Y1"));
    CHECK(dy0.w[3] == H0("Y0"));

    CHECK_THROWS_AS(extend_to_hirzebruch(A("x"), A("x*y"), 1), Error);  // not coprime
    CHECK_THROWS_AS(extend_to_hirzebruch(A("0"), A("0"), 1), Error);
}

TEST_CASE("degenerate extensions to P2") {
    GradingContext prj{Surf::Projective, 0};
    auto P = [&](const std::string& s) { return parse_poly(s, prj); };

    OneForm radial = extend_to_projective(A("y"), A("-x"));
    CHECK(radial.w[0] == P("Y"));
    CHECK(radial.w[1] == P("-X"));
    CHECK(radial.w[2].is_zero());
    CHECK(p2_degree(radial) == 0);

    OneForm dx = extend_to_projective(A("1"), A("0"));
    CHECK(dx.w[0] == P("Z"));
    CHECK(dx.w[1].is_zero());
    CHECK(dx.w[2] == P("-X"));
}

TEST_CASE("paper foliations: canonical degrees") {
    // example with K = O(2,3) on F_1
    OneForm f41 = extend_to_hirzebruch(A("-8*y + 9*x^2*y + 3*y^3 - 3*x^2*y^3"),
                                       A("8*x - 3*x^3 - 9*x*y^2 + 3*x^3*y^2 - 2*y^3"), 1);
    CHECK(hirzebruch_degrees(f41) == std::pair<long, long>(2, 3));

    // K = O(6,6) on F_2
    OneForm f42 = extend_to_hirzebruch(
        A("x^4 - x^3*y + x^4*y^3 + 5*x^3*y^4 + 9*x^2*y^5 + 7*x*y^6 + 2*y^7"),
        A("2*x^4 - 3*x^5*y^2 - 13*x^4*y^3 - 21*x^3*y^4 - 15*x^2*y^5 - 4*x*y^6"), 2);
    CHECK(hirzebruch_degrees(f42) == std::pair<long, long>(6, 6));

    // K = O(3,2) on F_2
    OneForm f44 = extend_to_hirzebruch(A("2*x + 4*x^3*y^3"), A("3*y^2 + 3*x^4*y^2"), 2);
    CHECK(hirzebruch_degrees(f44) == std::pair<long, long>(3, 2));

    // K = O(9) on P2, i.e. foliation degree 10
    OneForm f43 = extend_to_projective(A("-4*x^5*y - y^6 - 5*x^4*y^6"),
                                       A("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5"));
    CHECK(p2_degree(f43) == 10);
}

TEST_CASE("paper foliations: invariant boundary curves") {
    GradingContext h1{Surf::Hirzebruch, 1};
    auto H1 = [&](const std::string& s) { return parse_poly(s, h1); };
    OneForm f41 = extend_to_hirzebruch(A("-8*y + 9*x^2*y + 3*y^3 - 3*x^2*y^3"),
                                       A("8*x - 3*x^3 - 9*x*y^2 + 3*x^3*y^2 - 2*y^3"), 1);
    CHECK(is_invariant_curve(f41, H1("X0")));
    CHECK(is_invariant_curve(f41, H1("Y0")));
    CHECK(is_invariant_curve(f41, H1("Y1")));

    GradingContext h2{Surf::Hirzebruch, 2};
    auto H2 = [&](const std::string& s) { return parse_poly(s, h2); };
    OneForm f42 = extend_to_hirzebruch(
        A("x^4 - x^3*y + x^4*y^3 + 5*x^3*y^4 + 9*x^2*y^5 + 7*x*y^6 + 2*y^7"),
        A("2*x^4 - 3*x^5*y^2 - 13*x^4*y^3 - 21*x^3*y^4 - 15*x^2*y^5 - 4*x*y^6"), 2);
    CHECK(is_invariant_curve(f42, H2("X0")));
    CHECK(is_invariant_curve(f42, H2("X1")));
    CHECK(is_invariant_curve(f42, H2("Y0")));

    OneForm f44 = extend_to_hirzebruch(A("2*x + 4*x^3*y^3"), A("3*y^2 + 3*x^4*y^2"), 2);
    CHECK(is_invariant_curve(f44, H2("X0")));
    CHECK(is_invariant_curve(f44, H2("Y0")));

    GradingContext prj{Surf::Projective, 0};
    auto P = [&](const std::string& s) { return parse_poly(s, prj); };
    OneForm f43 = extend_to_projective(A("-4*x^5*y - y^6 - 5*x^4*y^6"),
                                       A("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5"));
    CHECK(is_invariant_curve(f43, P("X")));
    CHECK(is_invariant_curve(f43, P("Y")));
    CHECK(is_invariant_curve(f43, P("Z")));
}

TEST_CASE("paper first integrals wedge to zero") {
    GradingContext h2{Surf::Hirzebruch, 2};
    auto H2 = [&](const std::string& s) { return parse_poly(s, h2); };
    OneForm f42 = extend_to_hirzebruch(
        A("x^4 - x^3*y + x^4*y^3 + 5*x^3*y^4 + 9*x^2*y^5 + 7*x*y^6 + 2*y^7"),
        A("2*x^4 - 3*x^5*y^2 - 13*x^4*y^3 - 21*x^3*y^4 - 15*x^2*y^5 - 4*x*y^6"), 2);
    MultiPoly F42 = H2("X1^4*Y0^6 + 2*X0^3*X1^3*Y0^5*Y1 + X0^6*X1^2*Y0^4*Y1^2");
    MultiPoly G42 = H2("X0*X1^3*Y0^6 + X0^7*X1^3*Y0^3*Y1^3 + 3*X0^10*X1^2*Y0^2*Y1^4 "
                       "+ 3*X0^13*X1*Y0*Y1^5 + X0^16*Y1^6");
    CHECK(pencil_wedge_vanishes(f42, F42, G42));
    CHECK_FALSE(pencil_wedge_vanishes(f42, F42, H2("X0^4*X1^3*Y0^4*Y1^2")));

    OneForm f44 = extend_to_hirzebruch(A("2*x + 4*x^3*y^3"), A("3*y^2 + 3*x^4*y^2"), 2);
    MultiPoly F44 = H2("X1^2*Y0^3 + X0^8*Y1^3 + X0^4*X1^4*Y1^3");
    MultiPoly G44 = H2("X0^2*Y0^3");
    CHECK(pencil_wedge_vanishes(f44, F44, G44));

    GradingContext prj{Surf::Projective, 0};
    auto P = [&](const std::string& s) { return parse_poly(s, prj); };
    OneForm f43 = extend_to_projective(A("-4*x^5*y - y^6 - 5*x^4*y^6"),
                                       A("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5"));
    CHECK(pencil_wedge_vanishes(f43, P("X*Y*Z^4 + Y^6"), P("X*Z^5 + X^5*Z")));
    CHECK_FALSE(pencil_wedge_vanishes(f43, P("X*Y*Z^4 + Y^6"), P("X*Z^5 + Y^5*Z")));
}

TEST_CASE("affine first integrals match the paper") {
    // d(f/g) ^ omega = 0 on the affine chart as well
    OneForm w42 = OneForm::affine(
        A("x^4 - x^3*y + x^4*y^3 + 5*x^3*y^4 + 9*x^2*y^5 + 7*x*y^6 + 2*y^7"),
        A("2*x^4 - 3*x^5*y^2 - 13*x^4*y^3 - 21*x^3*y^4 - 15*x^2*y^5 - 4*x*y^6"));
    CHECK(pencil_wedge_vanishes(w42, A("x^4 + 2*x^3*y + x^2*y^2"),
                                A("x^3 + x^3*y^3 + 3*x^2*y^4 + 3*x*y^5 + y^6")));

    OneForm w43 = OneForm::affine(A("-4*x^5*y - y^6 - 5*x^4*y^6"),
                                  A("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5"));
    CHECK(pencil_wedge_vanishes(w43, A("x*y + y^6"), A("x + x^5")));

    OneForm w44 = OneForm::affine(A("2*x + 4*x^3*y^3"), A("3*y^2 + 3*x^4*y^2"));
    CHECK(pencil_wedge_vanishes(w44, A("x^2 + y^3 + x^4*y^3"), A("1")));
}
