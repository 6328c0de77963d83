#include <algorithm>
#include <random>
#include <catch2/catch_amalgamated.hpp>
#include "folint/linsys.hpp"
#include "folint/extension.hpp"
#include "folint/parse.hpp"

using namespace folint;

static const GradingContext AFF{Surf::Affine, 0};
static const GradingContext PROJ{Surf::Projective, 0};
static const GradingContext H1{Surf::Hirzebruch, 1};
static const GradingContext H2{Surf::Hirzebruch, 2};

static MultiPoly A(const std::string& s) { return parse_poly(s, AFF); }
static Rat Q(long n, long d = 1) { return make_rat(Int(n), Int(d)); }

static OneForm genus_zero_f2() {
    return extend_to_hirzebruch(
        A("x^4 - x^3*y + x^4*y^3 + 5*x^3*y^4 + 9*x^2*y^5 + 7*x*y^6 + 2*y^7"),
        A("2*x^4 - 3*x^5*y^2 - 13*x^4*y^3 - 21*x^3*y^4 - 15*x^2*y^5 - 4*x*y^6"), 2);
}
static OneForm genus_ten_p2() {
    return extend_to_projective(A("-4*x^5*y - y^6 - 5*x^4*y^6"),
                                A("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5"));
}
static OneForm poly_integral_f2() {
    return extend_to_hirzebruch(A("2*x + 4*x^3*y^3"), A("3*y^2 + 3*x^4*y^2"), 2);
}
static OneForm conics_p2() { return extend_to_projective(A("x"), A("y")); }

// configuration of free level-0 points in the base chart, one node per orbit
struct SynthPoint {
    Scalar x0, y0;
    FieldPtr field;
    long deg = 1;
};
static DicriticalConfig synth_points(const GradingContext& ctx,
                                     const std::vector<SynthPoint>& pts) {
    DicriticalConfig cfg;
    cfg.form.ctx = ctx;
    for (const SynthPoint& sp : pts) {
        ReductionNode n;
        n.parent = -1;
        n.chart = 0;
        n.field = sp.field;
        n.x0 = sp.x0;
        n.y0 = sp.y0;
        n.rel_degree = n.abs_degree = sp.deg;
        n.kind = SingClass::OrdinaryDicriticalTerminal;
        n.nu = 1;
        n.keep = true;
        for (long j = 0; j < sp.deg; ++j) {
            InfNearPoint p;
            p.id = (int)cfg.points.size() + 1;
            p.level = 0;
            p.rep = (int)cfg.reps.size();
            p.copy = j;
            n.ids.push_back(p.id);
            cfg.points.push_back(p);
        }
        cfg.roots.push_back((int)cfg.reps.size());
        cfg.reps.push_back(std::move(n));
    }
    cfg.proximity_matrix.assign(cfg.points.size(),
                                std::vector<bool>(cfg.points.size(), false));
    for (const auto& p : cfg.points) cfg.terminal_ids.push_back(p.id);
    return cfg;
}

// origin plus one point in its first neighborhood with tangent y = slope x
static DicriticalConfig synth_chain(const GradingContext& ctx, const Rat& slope) {
    DicriticalConfig cfg = synth_points(ctx, {{Scalar(0L), Scalar(0L), nullptr, 1}});
    ReductionNode n;
    n.parent = 0;
    n.level = 1;
    n.chart = 1;
    n.x0 = Scalar(0L);
    n.y0 = Scalar(slope);
    n.kind = SingClass::OrdinaryDicriticalTerminal;
    n.nu = 1;
    n.keep = true;
    n.ids = {2};
    cfg.reps[0].kids.push_back(1);
    cfg.reps[0].kind = SingClass::OrdinaryOther;
    cfg.reps.push_back(std::move(n));
    InfNearPoint p;
    p.id = 2;
    p.parent = 1;
    p.level = 1;
    p.proximate_to = {1};
    cfg.points.push_back(p);
    cfg.proximity_matrix.assign(2, std::vector<bool>(2, false));
    cfg.proximity_matrix[1][0] = true;
    cfg.terminal_ids = {2};
    return cfg;
}

static std::mt19937 rng(424243);

static int rank_rows(std::vector<std::vector<Rat>> rows) {
    return rows.empty() ? 0 : detail::rank_of(rows);
}
static bool same_row_space(const std::vector<std::vector<Rat>>& a,
                           const std::vector<std::vector<Rat>>& b) {
    auto c = a;
    c.insert(c.end(), b.begin(), b.end());
    int ra = rank_rows(a);
    return ra == rank_rows(b) && ra == rank_rows(c);
}

static std::vector<Rat> coeff_vec(const MultiPoly& f, const std::vector<Expv>& mons) {
    std::vector<Rat> v;
    size_t hit = 0;
    for (const Expv& e : mons) {
        Scalar s = coeff_of(f, e);
        if (!s.is_zero()) ++hit;
        v.push_back(s.is_zero() ? Rat(0) : s.as_rat());
    }
    REQUIRE(hit == f.terms.size());  // no terms outside the class
    return v;
}
static bool in_span(const std::vector<MultiPoly>& basis, const MultiPoly& target,
                    const std::vector<Expv>& mons) {
    std::vector<std::vector<Rat>> m;
    for (const auto& b : basis) m.push_back(coeff_vec(b, mons));
    int r = rank_rows(m);
    m.push_back(coeff_vec(target, mons));
    return rank_rows(m) == r;
}

// Taylor conditions assembled the pedestrian way: derivatives evaluated at the
// point, no strict-transform recursion
static std::vector<std::vector<Rat>> brute_taylor(const CurveSystem& sys,
                                                  const DicriticalConfig& cfg) {
    std::vector<Expv> mons = system_monomials(sys);
    int nv = sys.ctx.kind == Surf::Projective ? 3 : 4;
    std::vector<std::vector<Rat>> rows;
    for (size_t r = 0; r < cfg.roots.size(); ++r) {
        const ReductionNode& n = cfg.reps[cfg.roots[r]];
        long need = sys.m[n.ids.front() - 1];
        for (long dx = 0; dx < need; ++dx)
            for (long dy = 0; dx + dy < need; ++dy) {
                std::vector<Rat> row;
                for (const Expv& e : mons) {
                    MultiPoly g = compose(mono(nv, e, Scalar(1L)),
                                          chart_images(sys.ctx, n.chart));
                    for (long i = 0; i < dx; ++i) g = dvar(g, 0);
                    for (long i = 0; i < dy; ++i) g = dvar(g, 1);
                    Scalar val = eval_point(g, {n.x0, n.y0});
                    row.push_back(val.is_zero() ? Rat(0) : val.as_rat());
                }
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

TEST_CASE("monomial bases of effective classes") {
    CurveSystem conic{PROJ, 0, 2, {}};
    CHECK(system_monomials(conic).size() == 6);
    CHECK(system_effective(conic));
    CHECK(system_self_intersection(conic) == 4);

    CurveSystem big{H2, 4, 6, {}};
    CHECK(system_monomials(big).size() == 77);
    CHECK(system_self_intersection(big) == 2 * 4 * 6 + 2 * 36);

    CurveSystem ruling{H2, -2, 1, {}};
    CHECK(system_effective(ruling));
    CHECK(system_monomials(ruling) == std::vector<Expv>{{0, 0, 0, 1}});

    CHECK_FALSE(system_effective(CurveSystem{H2, -3, 1, {}}));
    CHECK_FALSE(system_effective(CurveSystem{PROJ, 0, -1, {}}));
}

TEST_CASE("conditions agree with direct Taylor expansion at free points") {
    std::uniform_int_distribution<int> coord(-4, 4), mm(1, 3);
    for (int round = 0; round < 12; ++round) {
        std::vector<SynthPoint> pts;
        int k = 1 + round % 3;
        std::set<std::pair<int, int>> seen;
        while ((int)pts.size() < k) {
            int px = coord(rng), py = coord(rng);
            if (!seen.insert({px, py}).second) continue;
            pts.push_back({Scalar((long)px), Scalar((long)py), nullptr, 1});
        }
        bool proj = round % 2 == 0;
        DicriticalConfig cfg = synth_points(proj ? PROJ : H1, pts);
        CurveSystem sys;
        sys.ctx = proj ? PROJ : H1;
        sys.a = 2;
        sys.b = proj ? 3 : 2;
        for (int i = 0; i < k; ++i) sys.m.push_back(mm(rng));
        auto mine = conditions_matrix(sys, cfg);
        auto brute = brute_taylor(sys, cfg);
        CHECK(same_row_space(mine, brute));
    }
}

TEST_CASE("plane systems through free points") {
    {
        DicriticalConfig cfg = synth_points(PROJ, {{Scalar(2L), Scalar(-1L), nullptr, 1}});
        CurveSystem sys{PROJ, 0, 2, {2}};
        CHECK(rank_rows(conditions_matrix(sys, cfg)) == 3);
        LinearSystemBasis ls = complete_linear_system(sys, cfg);
        CHECK(ls.proj_dim == 2);
        for (const auto& f : ls.forms) {
            auto mult = curve_multiplicities(f, cfg);
            CHECK(mult[0] >= 2);
        }
    }
    {
        DicriticalConfig cfg = synth_points(
            PROJ, {{Scalar(0L), Scalar(0L), nullptr, 1}, {Scalar(1L), Scalar(2L), nullptr, 1}});
        LinearSystemBasis ls = complete_linear_system(CurveSystem{PROJ, 0, 1, {1, 1}}, cfg);
        REQUIRE(ls.proj_dim == 0);
        CHECK(ls.forms[0] == parse_poly("2*X - Y", PROJ));
    }
    {
        DicriticalConfig cfg = synth_points(PROJ, {{Scalar(0L), Scalar(0L), nullptr, 1}});
        LinearSystemBasis ls = complete_linear_system(CurveSystem{PROJ, 0, 1, {3}}, cfg);
        CHECK(ls.proj_dim == -1);
        CHECK(ls.forms.empty());
        CHECK(ls.fixed_part.is_constant());
    }
    {
        // five points in general position support a single conic
        std::vector<SynthPoint> pts;
        for (auto [px, py] : {std::pair<long, long>{0, 1}, {1, 0}, {2, 3}, {-1, 1}, {3, -2}})
            pts.push_back({Scalar(px), Scalar(py), nullptr, 1});
        DicriticalConfig cfg = synth_points(PROJ, pts);
        LinearSystemBasis ls =
            complete_linear_system(CurveSystem{PROJ, 0, 2, {1, 1, 1, 1, 1}}, cfg);
        CHECK(ls.proj_dim == 0);
        auto mult = curve_multiplicities(ls.forms[0], cfg);
        CHECK(mult == std::vector<long>{1, 1, 1, 1, 1});
    }
}

TEST_CASE("conditions at infinitely near and conjugate points") {
    {
        DicriticalConfig cfg = synth_chain(PROJ, Q(3));
        LinearSystemBasis ls = complete_linear_system(CurveSystem{PROJ, 0, 1, {1, 1}}, cfg);
        REQUIRE(ls.proj_dim == 0);
        CHECK(ls.forms[0] == parse_poly("3*X - Y", PROJ));
        // lines through the origin form a base point free pencil; the tangent
        // condition cuts it to the single member above
        LinearSystemBasis pencil =
            complete_linear_system(CurveSystem{PROJ, 0, 1, {1, 0}}, cfg);
        CHECK(pencil.proj_dim == 1);
    }
    {
        FieldPtr F = Field::extend(nullptr, {Scalar(-2L), Scalar(0L), Scalar(1L)}, "t1");
        DicriticalConfig cfg =
            synth_points(PROJ, {{F->generator(), Scalar(0L), F, 2}});
        CurveSystem sys{PROJ, 0, 1, {1, 1}};
        auto rows = conditions_matrix(sys, cfg);
        CHECK(rank_rows(rows) == 2);
        LinearSystemBasis ls = complete_linear_system(sys, cfg);
        REQUIRE(ls.proj_dim == 0);
        CHECK(ls.forms[0] == parse_poly("Y", PROJ));
        MultiPoly local = compose(ls.forms[0], chart_images(PROJ, 0));
        CHECK(eval_point(local, {F->generator(), Scalar(0L)}).is_zero());

        CHECK_THROWS_AS(conditions_matrix(CurveSystem{PROJ, 0, 1, {1, 0}}, cfg), Error);
    }
}

TEST_CASE("rank is stable under row operations") {
    DicriticalConfig cfg = synth_points(
        PROJ, {{Scalar(1L), Scalar(1L), nullptr, 1}, {Scalar(-2L), Scalar(0L), nullptr, 1}});
    auto rows = conditions_matrix(CurveSystem{PROJ, 0, 3, {2, 2}}, cfg);
    int r = rank_rows(rows);
    std::uniform_int_distribution<int> nz(1, 7);
    for (int round = 0; round < 10; ++round) {
        auto mixed = rows;
        std::shuffle(mixed.begin(), mixed.end(), rng);
        for (auto& row : mixed) {
            Rat s = Q(nz(rng), nz(rng));
            for (auto& x : row) x *= s;
        }
        mixed.push_back(mixed[0]);
        for (size_t j = 0; j < mixed[0].size(); ++j)
            mixed.back()[j] += mixed[1][j];
        CHECK(rank_rows(mixed) == r);
    }
}

struct PencilFixture {
    OneForm form;
    DicriticalConfig cfg;
    NSModel model;
    DivisorClass gamma_t;
    CurveSystem sys;
    LinearSystemBasis ls;
};

static PencilFixture pencil_of(OneForm f, const std::vector<MultiPoly>& curves, long gamma) {
    DicriticalConfig cfg = dicritical_reduction(f);
    NSModel m = ns_model(f.ctx, cfg);
    VSigma vs = build_V_sigma(f, cfg, curves);
    TAlphaFamily fam = t_alpha_family(f, cfg, vs);
    DivisorClass gt = Rat(gamma) * t_alpha(fam, fam.alpha_sigma);
    CurveSystem sys = curve_system_of(gt, cfg);
    LinearSystemBasis ls = complete_linear_system(sys, cfg);
    return {std::move(f), std::move(cfg), m, std::move(gt), std::move(sys), std::move(ls)};
}

TEST_CASE("pencil of the genus zero foliation") {
    PencilFixture fx = pencil_of(
        genus_zero_f2(),
        {parse_poly("X0", H2), parse_poly("X1", H2), parse_poly("Y0", H2)}, 6);
    CHECK(fx.sys.a == 4);
    CHECK(fx.sys.b == 6);
    CHECK(fx.sys.m == std::vector<long>{6, 6, 4, 3, 1, 1, 1, 1, 1, 3, 3});
    REQUIRE(fx.ls.proj_dim == 1);
    CHECK(fx.ls.fixed_part.is_constant());
    CHECK(fx.ls.base_point_free);

    std::vector<Expv> mons = system_monomials(fx.sys);
    MultiPoly f1 = parse_poly("X1^4*Y0^6 + 2*X0^3*X1^3*Y0^5*Y1 + X0^6*X1^2*Y0^4*Y1^2", H2);
    MultiPoly f2 = parse_poly(
        "X0*X1^3*Y0^6 + X0^7*X1^3*Y0^3*Y1^3 + 3*X0^10*X1^2*Y0^2*Y1^4 + 3*X0^13*X1*Y0*Y1^5 + "
        "X0^16*Y1^6",
        H2);
    CHECK(in_span(fx.ls.forms, f1, mons));
    CHECK(in_span(fx.ls.forms, f2, mons));

    for (const auto& g : fx.ls.forms) {
        CHECK(curve_multiplicities(g, fx.cfg) == fx.sys.m);
        CHECK(strict_transform_curve(fx.model, fx.cfg, g) == fx.gamma_t);
    }
    CHECK(intersect(strict_transform_curve(fx.model, fx.cfg, fx.ls.forms[0]),
                    strict_transform_curve(fx.model, fx.cfg, fx.ls.forms[1])) == 0);
}

TEST_CASE("pencil of the genus ten foliation") {
    PencilFixture fx = pencil_of(
        genus_ten_p2(),
        {parse_poly("X", PROJ), parse_poly("Y", PROJ), parse_poly("Z", PROJ)}, 6);
    CHECK(fx.sys.b == 6);
    CHECK(fx.sys.m == std::vector<long>(36, 1));
    REQUIRE(fx.ls.proj_dim == 1);
    CHECK(fx.ls.base_point_free);

    std::vector<Expv> mons = system_monomials(fx.sys);
    CHECK(in_span(fx.ls.forms, parse_poly("X*Y*Z^4 + Y^6", PROJ), mons));
    CHECK(in_span(fx.ls.forms, parse_poly("X*Z^5 + X^5*Z", PROJ), mons));
    for (const auto& g : fx.ls.forms)
        CHECK(strict_transform_curve(fx.model, fx.cfg, g) == fx.gamma_t);
}

TEST_CASE("pencil of the polynomial integral foliation") {
    PencilFixture fx = pencil_of(poly_integral_f2(), {parse_poly("X0", H2)}, 3);
    CHECK(fx.sys.a == 2);
    CHECK(fx.sys.b == 3);
    std::vector<long> want(22, 1);
    want[0] = 3;
    CHECK(fx.sys.m == want);
    REQUIRE(fx.ls.proj_dim == 1);
    CHECK(fx.ls.base_point_free);

    std::vector<Expv> mons = system_monomials(fx.sys);
    CHECK(in_span(fx.ls.forms, parse_poly("X1^2*Y0^3 + X0^8*Y1^3 + X0^4*X1^4*Y1^3", H2), mons));
    CHECK(in_span(fx.ls.forms, parse_poly("X0^2*Y0^3", H2), mons));
}

TEST_CASE("base point freeness certificate") {
    {
        // pencil of lines through one point
        DicriticalConfig cfg = synth_points(PROJ, {{Scalar(0L), Scalar(0L), nullptr, 1}});
        LinearSystemBasis ls = complete_linear_system(CurveSystem{PROJ, 0, 1, {1}}, cfg);
        CHECK(ls.proj_dim == 1);
        CHECK(ls.base_point_free);
    }
    {
        // conics through four points, three collinear: the line splits off
        std::vector<SynthPoint> pts;
        for (auto [px, py] : {std::pair<long, long>{0, 0}, {1, 0}, {2, 0}, {0, 1}})
            pts.push_back({Scalar(px), Scalar(py), nullptr, 1});
        DicriticalConfig cfg = synth_points(PROJ, pts);
        CurveSystem sys{PROJ, 0, 2, {1, 1, 1, 1}};
        CHECK(system_self_intersection(sys) == 0);
        LinearSystemBasis ls = complete_linear_system(sys, cfg);
        CHECK(ls.proj_dim == 1);
        CHECK_FALSE(ls.fixed_part.is_constant());
        CHECK_FALSE(ls.base_point_free);
    }
    {
        // conics through four general points: an honest base point free pencil
        std::vector<SynthPoint> pts;
        for (auto [px, py] : {std::pair<long, long>{0, 0}, {1, 0}, {0, 1}, {1, 1}})
            pts.push_back({Scalar(px), Scalar(py), nullptr, 1});
        DicriticalConfig cfg = synth_points(PROJ, pts);
        LinearSystemBasis ls =
            complete_linear_system(CurveSystem{PROJ, 0, 2, {1, 1, 1, 1}}, cfg);
        CHECK(ls.proj_dim == 1);
        CHECK(ls.fixed_part.is_constant());
        CHECK(ls.base_point_free);
    }
    {
        // self-intersection gate: positive square is never certified
        DicriticalConfig cfg = synth_points(PROJ, {{Scalar(0L), Scalar(0L), nullptr, 1}});
        LinearSystemBasis ls = complete_linear_system(CurveSystem{PROJ, 0, 1, {0}}, cfg);
        CHECK(ls.proj_dim == 2);
        CHECK_FALSE(ls.base_point_free);
    }
}

TEST_CASE("search for the least moving multiple") {
    {
        DicriticalConfig cfg = synth_points(PROJ, {{Scalar(0L), Scalar(0L), nullptr, 1}});
        NSModel m{Surf::Projective, 0, 1};
        DivisorClass half = base_class(m, 0) - Q(1, 2) * exceptional_class(m, 1);
        CHECK(e_of(half, cfg, 24) == 2);
        DivisorClass neg = base_class(m, 0) - Q(2) * exceptional_class(m, 1);
        CHECK_THROWS_AS(e_of(neg, cfg, 12), BoundExceeded);
        try {
            e_of(neg, cfg, 12);
        } catch (const BoundExceeded& e) {
            CHECK(e.bound == 12);
        }
    }
    {
        OneForm w = genus_zero_f2();
        DicriticalConfig cfg = dicritical_reduction(w);
        VSigma vs = build_V_sigma(
            w, cfg, {parse_poly("X0", H2), parse_poly("X1", H2), parse_poly("Y0", H2)});
        TAlphaFamily fam = t_alpha_family(w, cfg, vs);
        CHECK(e_of(t_alpha(fam, fam.alpha_sigma), cfg, 72) == 6);
    }
    {
        OneForm w = poly_integral_f2();
        DicriticalConfig cfg = dicritical_reduction(w);
        VSigma vs = build_V_sigma(w, cfg, {parse_poly("X0", H2)});
        TAlphaFamily fam = t_alpha_family(w, cfg, vs);
        CHECK(e_of(t_alpha(fam, fam.alpha_sigma), cfg, 36) == 3);
    }
    {
        OneForm w = conics_p2();
        DicriticalConfig cfg = dicritical_reduction(w);
        VSigma vs = build_V_sigma(w, cfg, {});
        TAlphaFamily fam = t_alpha_family(w, cfg, vs);
        CHECK(e_of(t_alpha(fam, fam.alpha_sigma), cfg, 24) == 2);
    }
}
