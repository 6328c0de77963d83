#pragma once
#include <algorithm>
#include <climits>
#include <functional>
#include <string>
#include <utility>
#include <vector>
#include "oneform.hpp"
#include "qfactor.hpp"

// reduction of singularities down to the dicritical configuration

namespace folint {

enum class SingClass { Simple, OrdinaryDicriticalTerminal, OrdinaryOther };

// ratio of the eigenvalues of a matrix with trace tau and determinant det
// lies in Q_{>0} iff s = tau^2/det equals r + 2 + 1/r for some r in Q_{>0}
inline bool rational_positive_ratio(const Scalar& tau, const Scalar& det) {
    if (det.is_zero()) return false;
    Scalar s = tau * tau / det;
    if (!s.is_rational()) return false;
    Rat q = s.as_rat();
    if (q < 4) return false;
    Rat d = q * (q - 4);  // discriminant of r + 1/r = q - 2; nonnegative here
    return mpz_perfect_square_p(d.get_num().get_mpz_t()) != 0 &&
           mpz_perfect_square_p(d.get_den().get_mpz_t()) != 0;
}

namespace detail {

// order of vanishing at the origin; 0 when the form does not vanish there
inline long form_mult(const MultiPoly& a, const MultiPoly& b) {
    long m = LONG_MAX;
    if (!a.is_zero()) m = std::min(m, min_total_degree(a));
    if (!b.is_zero()) m = std::min(m, min_total_degree(b));
    internal_check(m != LONG_MAX, "multiplicity of zero form");
    return m;
}

// the linear part is J = [[b_x, b_y], [-a_x, -a_y]], the jacobian of the
// dual vector field b d/dx - a d/dy; nu >= 2 forces J = 0, so the simple
// test subsumes the m = 1 requirement
inline SingClass classify_pair(const MultiPoly& a, const MultiPoly& b, long* nu_out = nullptr) {
    long nu = form_mult(a, b);
    if (nu_out) *nu_out = nu;
    internal_check(nu >= 1, "classify: origin not singular");
    Scalar m11 = coeff_of(b, {1, 0, 0, 0}), m12 = coeff_of(b, {0, 1, 0, 0});
    Scalar m21 = -coeff_of(a, {1, 0, 0, 0}), m22 = -coeff_of(a, {0, 1, 0, 0});
    Scalar tau = m11 + m22, det = m11 * m22 - m12 * m21;
    bool simple = det.is_zero() ? !tau.is_zero() : !rational_positive_ratio(tau, det);
    if (simple) return SingClass::Simple;
    MultiPoly d =
        var_poly(2, 0) * homogeneous_part(a, nu) + var_poly(2, 1) * homogeneous_part(b, nu);
    return d.is_zero() ? SingClass::OrdinaryDicriticalTerminal : SingClass::OrdinaryOther;
}

} // namespace detail

// one Galois orbit of points, held by a representative with exact coordinates
struct SurfacePoint {
    std::vector<int> chart;  // base chart id, then the blowup chart (1 or 2) per level
    Scalar x0, y0;           // coordinates in the innermost chart
    FieldPtr field;          // tower hosting the coordinates (null = Q)
    long orbit_size = 1;     // number of conjugates over Q
};

inline SingClass classify(const OneForm& local) {
    internal_check(local.ctx.kind == Surf::Affine, "classify: affine form expected");
    if (detail::form_mult(local.w[0], local.w[1]) < 1)
        throw Error("classify: origin is not singular");
    return detail::classify_pair(local.w[0], local.w[1]);
}

// nu_p of an affine form; 0 at points where the form does not vanish
inline long local_multiplicity(const OneForm& local, const SurfacePoint& p) {
    internal_check(local.ctx.kind == Surf::Affine, "local_multiplicity: affine form expected");
    MultiPoly a = local.w[0], b = local.w[1];
    if (!p.x0.is_zero()) { a = translate(a, 0, p.x0); b = translate(b, 0, p.x0); }
    if (!p.y0.is_zero()) { a = translate(a, 1, p.y0); b = translate(b, 1, p.y0); }
    return detail::form_mult(a, b);
}

struct BlowupCharts {
    OneForm chart1;  // (x, y) -> (x, xy), E = {x = 0}
    OneForm chart2;  // (x, y) -> (xy, y), E = {y = 0}
    bool exceptional_invariant;
};

// strict transform of the form under the blowup of the origin
inline BlowupCharts blowup_foliation(const OneForm& local) {
    internal_check(local.ctx.kind == Surf::Affine, "blowup_foliation: affine form expected");
    const MultiPoly &a = local.w[0], &b = local.w[1];
    MultiPoly x = var_poly(2, 0), y = var_poly(2, 1);
    MultiPoly ap = compose(a, {x, x * y}), bp = compose(b, {x, x * y});
    MultiPoly a1 = ap + y * bp, b1 = x * bp;
    long m1 = LONG_MAX;
    if (!a1.is_zero()) m1 = std::min(m1, min_deg_in(a1, 0));
    if (!b1.is_zero()) m1 = std::min(m1, min_deg_in(b1, 0));
    internal_check(m1 != LONG_MAX, "blowup: zero transform");
    if (!a1.is_zero() && m1) a1 = shift_down(a1, 0, m1);
    if (!b1.is_zero() && m1) b1 = shift_down(b1, 0, m1);
    MultiPoly aq = compose(a, {x * y, y}), bq = compose(b, {x * y, y});
    MultiPoly a2 = y * aq, b2 = x * aq + bq;
    long m2 = LONG_MAX;
    if (!a2.is_zero()) m2 = std::min(m2, min_deg_in(a2, 1));
    if (!b2.is_zero()) m2 = std::min(m2, min_deg_in(b2, 1));
    internal_check(m2 != LONG_MAX, "blowup: zero transform");
    if (!a2.is_zero() && m2) a2 = shift_down(a2, 1, m2);
    if (!b2.is_zero() && m2) b2 = shift_down(b2, 1, m2);
    bool invariant = b1.is_zero() || min_deg_in(b1, 0) >= 1;
    return {OneForm::affine(a1, b1), OneForm::affine(a2, b2), invariant};
}

namespace detail {

inline FieldPtr extend_field(const FieldPtr& F, const UPoly& minpoly, int cap) {
    int depth = field_depth(F) + 1;
    if (depth > cap)
        throw FieldTowerTooDeep("a point of relative degree " + std::to_string(udeg(minpoly)) +
                                " needs a field tower of depth " + std::to_string(depth));
    return Field::extend(F, minpoly, "t" + std::to_string(depth));
}

// roots of u in extensions of F, one representative per orbit: (root, relative degree)
inline std::vector<std::pair<Scalar, long>> orbit_roots(const UPoly& u, const FieldPtr& F,
                                                        int cap) {
    std::vector<std::pair<Scalar, long>> out;
    if (udeg(u) < 1) return out;
    for (const auto& [q, mult] : factor_field(u, F)) {
        (void)mult;
        if (udeg(q) == 1) out.emplace_back(-q[0], 1L);
        else out.emplace_back(extend_field(F, q, cap)->generator(), (long)udeg(q));
    }
    return out;
}

// Res_y(a, b) as a univariate in x, by specialization at integer nodes;
// nodes killing either leading coefficient are skipped
inline UPoly resultant_x(const MultiPoly& a, const MultiPoly& b) {
    long dya = deg_in(a, 1), dyb = deg_in(b, 1);
    internal_check(dya >= 1 && dyb >= 1, "resultant_x: positive y-degrees expected");
    MultiPoly lca = coeffs_in(a, 1).back(), lcb = coeffs_in(b, 1).back();
    long bound = dya * deg_in(b, 0) + dyb * deg_in(a, 0);
    std::vector<Scalar> nodes, values;
    for (long t = 0; (long)nodes.size() <= bound; t = t > 0 ? -t : -t + 1) {
        Scalar ts(t);
        if (eval_point(lca, {ts, Scalar(0L)}).is_zero() ||
            eval_point(lcb, {ts, Scalar(0L)}).is_zero())
            continue;
        nodes.push_back(ts);
        values.push_back(uresultant(to_upoly(subst_scalar(a, 0, ts), 1),
                                    to_upoly(subst_scalar(b, 0, ts), 1)));
    }
    UPoly r = uinterpolate(nodes, values);
    unormalize(r);
    return r;
}

// which part of a chart is enumerated, so the atlas covers every point once
enum class Region { Full, SliceX, SliceY, Origin };

inline Region chart_region(const GradingContext& ctx, int id) {
    if (ctx.kind == Surf::Affine) return Region::Full;
    if (ctx.kind == Surf::Projective)
        return id == 0 ? Region::Full : id == 1 ? Region::SliceY : Region::Origin;
    switch (id) {
        case 0: return Region::Full;
        case 1: return Region::SliceX;
        case 2: return Region::SliceY;
        default: return Region::Origin;
    }
}

struct RawPoint {
    FieldPtr field;
    Scalar x0, y0;
    long rel = 1;
};

// common zeros of a coprime pair inside the region, one representative per orbit
inline std::vector<RawPoint> region_points(const MultiPoly& a, const MultiPoly& b, Region reg,
                                           int cap) {
    std::vector<RawPoint> out;
    Scalar zero(0L);
    if (reg == Region::Origin) {
        if (coeff_of(a, {0, 0, 0, 0}).is_zero() && coeff_of(b, {0, 0, 0, 0}).is_zero())
            out.push_back({nullptr, zero, zero, 1});
        return out;
    }
    if (reg == Region::SliceX || reg == Region::SliceY) {
        int v = reg == Region::SliceX ? 0 : 1;
        UPoly ua = to_upoly(subst_scalar(a, v, zero), 1 - v);
        UPoly ub = to_upoly(subst_scalar(b, v, zero), 1 - v);
        internal_check(!uis_zero(ua) || !uis_zero(ub), "coordinate line inside singular locus");
        for (const auto& [root, rel] : orbit_roots(ugcd(ua, ub), nullptr, cap))
            out.push_back(reg == Region::SliceX ? RawPoint{root.field(), zero, root, rel}
                                                : RawPoint{root.field(), root, zero, rel});
        return out;
    }
    if (a.is_zero() || b.is_zero()) return out;  // the other one is a nonzero constant
    if (a.is_constant() || b.is_constant()) return out;
    long dya = deg_in(a, 1), dyb = deg_in(b, 1);
    UPoly R;
    if (dya == 0) R = to_upoly(a, 0);
    else if (dyb == 0) R = to_upoly(b, 0);
    else R = resultant_x(a, b);
    internal_check(!uis_zero(R), "resultant vanished for a coprime pair");
    for (const auto& [alpha, relx] : orbit_roots(R, nullptr, cap)) {
        UPoly ua = to_upoly(subst_scalar(a, 0, alpha), 1);
        UPoly ub = to_upoly(subst_scalar(b, 0, alpha), 1);
        internal_check(!uis_zero(ua) || !uis_zero(ub), "fiber inside singular locus");
        UPoly g = ugcd(ua, ub);
        if (udeg(g) < 1) continue;  // resultant root with no zero above it
        for (const auto& [beta, rely] : orbit_roots(g, alpha.field(), cap))
            out.push_back({rely > 1 ? beta.field() : alpha.field(), alpha, beta, relx * rely});
    }
    return out;
}

struct ChartPoints {
    int chart;
    std::vector<RawPoint> pts;
    MultiPoly a, b;  // the local pair the points are zeros of
};

inline std::vector<ChartPoints> surface_scan(const OneForm& w, int cap) {
    std::vector<ChartPoints> out;
    if (w.ctx.kind == Surf::Affine) {
        MultiPoly g = mgcd(w.w[0], w.w[1]);
        if (!g.is_constant())
            throw PositiveDimensionalSingularLocus("coefficients share the factor " +
                                                   poly_str(g, w.ctx));
        out.push_back({0, region_points(w.w[0], w.w[1], Region::Full, cap), w.w[0], w.w[1]});
        return out;
    }
    for (int id = 0; id < chart_count(w.ctx); ++id) {
        auto images = chart_images(w.ctx, id);
        auto [i, j] = chart_pair(w.ctx, id);
        MultiPoly a = compose(w.w[i], images), b = compose(w.w[j], images);
        MultiPoly g = mgcd(a, b);
        if (!g.is_constant())
            throw PositiveDimensionalSingularLocus("chart " + std::to_string(id) +
                                                   " coefficients share a non-constant factor");
        out.push_back({id, region_points(a, b, chart_region(w.ctx, id), cap), a, b});
    }
    return out;
}

} // namespace detail

inline std::vector<SurfacePoint> singular_points(const OneForm& w, int field_tower_depth = 2) {
    std::vector<SurfacePoint> out;
    for (const auto& cp : detail::surface_scan(w, field_tower_depth))
        for (const auto& rp : cp.pts)
            out.push_back({{cp.chart}, rp.x0, rp.y0, rp.field, rp.rel});
    std::sort(out.begin(), out.end(), [](const SurfacePoint& u, const SurfacePoint& v) {
        if (u.chart != v.chart) return u.chart < v.chart;
        int c = cmp_vec(field_key(u.field), field_key(v.field));
        if (c) return c < 0;
        c = scalar_order_cmp(u.x0, v.x0);
        if (c) return c < 0;
        return scalar_order_cmp(u.y0, v.y0) < 0;
    });
    return out;
}

struct ReductionOptions {
    long blowup_budget = 500;
    int field_tower_depth = 2;
};

struct InfNearPoint {
    int id = 0;
    int parent = 0;  // 0: point on the base surface
    int level = 0;
    SurfacePoint point;
    SingClass kind = SingClass::Simple;
    long nu = 0;
    int eps = 0;
    std::vector<int> proximate_to;  // ids, ascending; contains parent when nonempty
    bool satellite = false;
    long rel_degree = 1;  // degree over the parent point's field
    int rep = -1;         // index into DicriticalConfig::reps
    long copy = 0;        // conjugate index within the orbit
};

// one orbit of blowup-tree points; local data lives at the representative
struct ReductionNode {
    int parent = -1;  // reps index, -1 for points on the base surface
    int level = 0;
    int chart = 0;  // base chart for roots, blowup chart (1 or 2) below
    FieldPtr field;
    Scalar x0, y0;
    long rel_degree = 1, abs_degree = 1;
    SingClass kind = SingClass::Simple;
    long nu = 0;
    int axis_x = -1, axis_y = -1;  // reps indices of exceptional curves {x=0}, {y=0}
    MultiPoly a = MultiPoly(2), b = MultiPoly(2);  // local form, point at the origin
    std::vector<int> kids;
    long subtree = 0;  // orbit count of the kept subtree
    bool keep = false;
    std::vector<int> ids;  // configuration ids of the conjugate copies
};

struct DicriticalConfig {
    OneForm form;
    std::vector<InfNearPoint> points;  // points[k].id == k + 1
    std::vector<int> terminal_ids;
    std::vector<std::vector<bool>> proximity_matrix;  // [i][j]: p_{i+1} proximate to p_{j+1}
    std::vector<ReductionNode> reps;
    std::vector<int> roots;  // kept roots, in id order
};

inline DicriticalConfig dicritical_reduction(const OneForm& w, const ReductionOptions& opt = {}) {
    internal_check(w.ctx.kind != Surf::Affine, "dicritical_reduction: form must live on a surface");
    DicriticalConfig cfg{w, {}, {}, {}, {}, {}};
    auto& reps = cfg.reps;
    std::vector<int> all_roots;
    for (const auto& cp : detail::surface_scan(w, opt.field_tower_depth))
        for (const auto& rp : cp.pts) {
            ReductionNode n;
            n.chart = cp.chart;
            n.field = rp.field;
            n.x0 = rp.x0;
            n.y0 = rp.y0;
            n.rel_degree = n.abs_degree = rp.rel;
            n.a = cp.a;
            n.b = cp.b;
            if (!rp.x0.is_zero()) { n.a = translate(n.a, 0, rp.x0); n.b = translate(n.b, 0, rp.x0); }
            if (!rp.y0.is_zero()) { n.a = translate(n.a, 1, rp.y0); n.b = translate(n.b, 1, rp.y0); }
            all_roots.push_back((int)reps.size());
            reps.push_back(std::move(n));
        }

    long blowups = 0;
    for (size_t v = 0; v < reps.size(); ++v) {
        long nu = 0;
        SingClass k = detail::classify_pair(reps[v].a, reps[v].b, &nu);
        reps[v].kind = k;
        reps[v].nu = nu;
        if (k != SingClass::OrdinaryOther) continue;
        if (++blowups > opt.blowup_budget)
            throw BlowupBudgetExceeded("more than " + std::to_string(opt.blowup_budget) +
                                       " blowups; the input is likely not reduced");
        BlowupCharts bc = blowup_foliation(OneForm::affine(reps[v].a, reps[v].b));
        internal_check(bc.exceptional_invariant, "ordinary blowup must keep E invariant");
        const FieldPtr F = reps[v].field;
        const int level = reps[v].level, ax = reps[v].axis_x, ay = reps[v].axis_y;
        const long abs = reps[v].abs_degree;
        const MultiPoly &a1 = bc.chart1.w[0], &b1 = bc.chart1.w[1];
        UPoly ua = to_upoly(subst_scalar(a1, 0, Scalar(0L)), 1);
        UPoly ub = to_upoly(subst_scalar(b1, 0, Scalar(0L)), 1);
        internal_check(!uis_zero(ua) || !uis_zero(ub), "exceptional line inside singular locus");
        for (const auto& [c, rel] : detail::orbit_roots(ugcd(ua, ub), F, opt.field_tower_depth)) {
            ReductionNode ch;
            ch.parent = (int)v;
            ch.level = level + 1;
            ch.chart = 1;
            ch.field = rel > 1 ? c.field() : F;
            ch.x0 = Scalar(0L);
            ch.y0 = c;
            ch.rel_degree = rel;
            ch.abs_degree = abs * rel;
            ch.axis_x = (int)v;
            ch.axis_y = c.is_zero() ? ay : -1;
            ch.a = c.is_zero() ? a1 : translate(a1, 1, c);
            ch.b = c.is_zero() ? b1 : translate(b1, 1, c);
            reps[v].kids.push_back((int)reps.size());
            reps.push_back(std::move(ch));
        }
        const MultiPoly &a2 = bc.chart2.w[0], &b2 = bc.chart2.w[1];
        if (coeff_of(a2, {0, 0, 0, 0}).is_zero() && coeff_of(b2, {0, 0, 0, 0}).is_zero()) {
            ReductionNode ch;
            ch.parent = (int)v;
            ch.level = level + 1;
            ch.chart = 2;
            ch.field = F;
            ch.x0 = Scalar(0L);
            ch.y0 = Scalar(0L);
            ch.rel_degree = 1;
            ch.abs_degree = abs;
            ch.axis_x = ax;
            ch.axis_y = (int)v;
            ch.a = a2;
            ch.b = b2;
            reps[v].kids.push_back((int)reps.size());
            reps.push_back(std::move(ch));
        }
    }

    // keep exactly the chains below terminal dicritical points
    std::function<void(int)> mark = [&](int v) {
        bool keep = reps[v].kind == SingClass::OrdinaryDicriticalTerminal;
        long size = 1;
        std::vector<int> kept;
        for (int k : reps[v].kids) {
            mark(k);
            if (reps[k].keep) {
                keep = true;
                kept.push_back(k);
                size += reps[k].subtree;
            }
        }
        reps[v].kids = std::move(kept);
        reps[v].keep = keep;
        reps[v].subtree = size;
    };
    for (int r : all_roots) mark(r);

    auto kid_rel = [&](int v) {
        long s = 0;
        for (int k : reps[v].kids) s += reps[k].rel_degree;
        return s;
    };
    auto node_before = [&](int u, int v) {
        if (reps[u].subtree != reps[v].subtree) return reps[u].subtree > reps[v].subtree;
        long ku = kid_rel(u), kv = kid_rel(v);
        if (ku != kv) return ku > kv;
        if (reps[u].rel_degree != reps[v].rel_degree)
            return reps[u].rel_degree < reps[v].rel_degree;
        if (reps[u].chart != reps[v].chart) return reps[u].chart < reps[v].chart;
        int c = cmp_vec(field_key(reps[u].field), field_key(reps[v].field));
        if (c) return c < 0;
        c = scalar_order_cmp(reps[u].x0, reps[v].x0);
        if (c) return c < 0;
        return scalar_order_cmp(reps[u].y0, reps[v].y0) < 0;
    };
    for (int r : all_roots)
        if (reps[r].keep) cfg.roots.push_back(r);
    std::sort(cfg.roots.begin(), cfg.roots.end(), node_before);
    for (auto& n : reps) std::sort(n.kids.begin(), n.kids.end(), node_before);

    auto chart_path = [&](int v) {
        std::vector<int> path;
        for (int u = v; u >= 0; u = reps[u].parent) path.push_back(reps[u].chart);
        std::reverse(path.begin(), path.end());
        return path;
    };
    // preorder over the expanded tree: a copy's subtree precedes the next copy
    std::function<void(int, long, int)> emit = [&](int v, long copy, int parent_id) {
        ReductionNode& n = reps[v];
        InfNearPoint p;
        p.id = (int)cfg.points.size() + 1;
        n.ids.push_back(p.id);
        p.parent = parent_id;
        p.level = n.level;
        p.point = SurfacePoint{chart_path(v), n.x0, n.y0, n.field, n.abs_degree};
        p.kind = n.kind;
        p.nu = n.nu;
        p.eps = n.kind == SingClass::OrdinaryDicriticalTerminal ? 1 : 0;
        p.rel_degree = n.rel_degree;
        p.rep = v;
        p.copy = copy;
        for (int u : {n.axis_x, n.axis_y})
            if (u >= 0)
                p.proximate_to.push_back(reps[u].ids[copy / (n.abs_degree / reps[u].abs_degree)]);
        std::sort(p.proximate_to.begin(), p.proximate_to.end());
        p.satellite = p.proximate_to.size() == 2;
        int id = p.id;
        cfg.points.push_back(std::move(p));
        for (int k : n.kids) {
            long r = reps[k].rel_degree;
            for (long j = copy * r; j < (copy + 1) * r; ++j) emit(k, j, id);
        }
    };
    for (int r : cfg.roots)
        for (long j = 0; j < reps[r].abs_degree; ++j) emit(r, j, 0);

    size_t n = cfg.points.size();
    cfg.proximity_matrix.assign(n, std::vector<bool>(n, false));
    for (const auto& p : cfg.points) {
        if (p.kind == SingClass::OrdinaryDicriticalTerminal) cfg.terminal_ids.push_back(p.id);
        for (int j : p.proximate_to) cfg.proximity_matrix[p.id - 1][j - 1] = true;
    }
    return cfg;
}

// multiplicity of the recursive strict transform of {f = 0} at every configuration point;
// f must have rational coefficients so conjugate copies share one value
inline std::vector<long> curve_multiplicities(const MultiPoly& f, const DicriticalConfig& cfg) {
    internal_check(!f.is_zero(), "curve_multiplicities: zero curve");
    std::vector<long> out(cfg.points.size(), 0);
    MultiPoly x = var_poly(2, 0), y = var_poly(2, 1);
    std::function<void(int, MultiPoly)> walk = [&](int v, MultiPoly g) {
        const ReductionNode& n = cfg.reps[v];
        if (!n.x0.is_zero()) g = translate(g, 0, n.x0);
        if (!n.y0.is_zero()) g = translate(g, 1, n.y0);
        internal_check(!g.is_zero(), "curve restriction vanished");
        long m = min_total_degree(g);
        for (int id : n.ids) out[id - 1] = m;
        if (n.kids.empty()) return;
        MultiPoly g1 = compose(g, {x, x * y});
        MultiPoly g2 = compose(g, {x * y, y});
        if (m) {
            g1 = shift_down(g1, 0, m);
            g2 = shift_down(g2, 1, m);
        }
        for (int k : n.kids) walk(k, cfg.reps[k].chart == 1 ? g1 : g2);
    };
    for (int r : cfg.roots) walk(r, restrict_curve(f, cfg.form.ctx, cfg.reps[r].chart));
    return out;
}

} // namespace folint
