#include "trop/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace trop {

namespace {

QFraction plus_bracket_any(long long a) {
    // (q^a + q^{-a})/(q + q^{-1}); at a = 0 this is the double-end factor
    // 2/(q + q^{-1}).
    if (a < 0) a = -a;
    QLaurent num = QLaurent::monomial(static_cast<int>(a), 1) +
                   QLaurent::monomial(static_cast<int>(-a), 1);
    QLaurent den = QLaurent::monomial(1, 1) + QLaurent::monomial(-1, 1);
    return QFraction(std::move(num), std::move(den));
}

QFraction vertex_mult(const VertexClass& cls) {
    switch (cls.tag) {
    case VertexTag::TypeI: return QFraction::one();
    case VertexTag::TypeII: return QFraction::of(bracket_minus(cls.mikhalkin_a));
    case VertexTag::TypeIII: return plus_bracket_any(cls.mikhalkin_a);
    default: throw std::invalid_argument("refined multiplicity needs vertex types I-III");
    }
}

QFraction ends_factor(const CombType& comb, const Degree& deg, bool simple) {
    QFraction f = QFraction::one();
    for (const auto& e : comb.ends) {
        long long w = weight_of(e.dir);
        bool fixed = deg.is_fixed(e.label);
        f = f * (simple ? end_mult_simple(w, fixed) : end_mult(w, fixed));
    }
    return f;
}

QFraction refined_mult_impl(const CombType& comb, const Degree& deg, bool simple_ends) {
    QFraction f = ends_factor(comb, deg, simple_ends);
    for (int v = 0; v < comb.num_vertices; ++v) f = f * vertex_mult(classify_vertex(comb, v));
    return f;
}

} // namespace

QFraction refined_mult(const CombType& comb, const Degree& deg) {
    return refined_mult_impl(comb, deg, false);
}

QFraction refined_mult(const PlacedCurve& C, const Degree& deg) {
    return refined_mult_impl(C.comb, deg, false);
}

QFraction refined_mult_simple_ends(const CombType& comb, const Degree& deg) {
    return refined_mult_impl(comb, deg, true);
}

YLaurent refined_mult_y(const CombType& comb, const Degree& deg) {
    auto reduced = refined_mult(comb, deg).reduce();
    if (!reduced)
        throw std::logic_error("refined multiplicity did not reduce to a Laurent polynomial");
    return to_y(*reduced);
}

YLaurent refined_severi_mult(const PlacedCurve& C, const Degree& deg) {
    if (!deg.fixed.empty()) throw std::invalid_argument("refined Severi multiplicity needs F empty");
    QLaurent p = QLaurent::one();
    for (int v = 0; v < C.comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(C.comb, v);
        if (cls.tag == VertexTag::TypeI) continue;
        if (cls.tag != VertexTag::TypeII)
            throw std::invalid_argument("refined Severi multiplicity needs a simple (s=0) curve");
        p = p * bracket_minus(cls.mikhalkin_a);
    }
    return to_y(p);
}

long long mikhalkin_mult(const CombType& comb) {
    long long m = 1;
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(comb, v);
        if (cls.tag == VertexTag::TypeII || cls.tag == VertexTag::TypeIII) m *= cls.mikhalkin_a;
    }
    return m;
}

int real_mult(long long mikhalkin) {
    if (mikhalkin % 2 == 0) return 0;
    long long m = mikhalkin % 4;
    if (m < 0) m += 4;
    return m == 1 ? 1 : -1;
}

int real_mult(const PlacedCurve& C) { return real_mult(mikhalkin_mult(C.comb)); }

long long descendant_mult(const CombType& comb) {
    long long m = 1;
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(comb, v);
        if (cls.tag == VertexTag::TypeII) m *= cls.mikhalkin_a;
    }
    return m;
}

int broccoli_index(const CombType& comb, const Degree& deg) {
    int cm = 0, wcm = 0, ef = 0, en = 0;
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(comb, v);
        if (cls.tag == VertexTag::TypeII && cls.mikhalkin_a % 2 == 0) ++wcm;
        if (cls.tag == VertexTag::TypeIII && cls.mikhalkin_a % 2 == 0) ++cm;
    }
    for (const auto& e : comb.ends) {
        if (weight_of(e.dir) % 2 != 0) continue;
        (deg.is_fixed(e.label) ? ef : en)++;
    }
    return -cm - ef + wcm + en;
}

CurveMultiplicities curve_multiplicities(const PlacedCurve& C, const Degree& deg) {
    CurveMultiplicities out;
    out.refined = refined_mult_y(C.comb, deg);
    out.mikhalkin = mikhalkin_mult(C.comb);
    out.real_m = real_mult(out.mikhalkin);
    out.descendant = descendant_mult(C.comb);
    out.broccoli_index = broccoli_index(C.comb, deg);
    out.flags = curve_class_predicates(C.comb, deg);
    return out;
}

// ---------------------------------------------------------------------------
// Broccolization surgeries.
namespace {

// Unimodular M with M*p = (1,0) for primitive p; returns the columns of
// M^{-1}.
void primitive_frame(const IVec& p, IVec& col1, IVec& col2) {
    long long a = 1, b = 0;
    long long px = p.x, py = p.y;
    // extended gcd: a*px + b*py = 1
    {
        long long r0 = px, r1 = py, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            std::swap(r0 = r0 - q * r1, r1);
            std::swap(s0 = s0 - q * s1, s1);
            std::swap(t0 = t0 - q * t1, t1);
        }
        if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
        a = s0;
        b = t0;
    }
    // M = [[a, b], [-py, px]], M^{-1} = [[px, -b], [py, a]]
    col1 = {px, py};
    col2 = {-b, a};
}

// -v = v1 + v2 with v1, v2 primitive, for an even direction v.
std::pair<IVec, IVec> primitive_decomposition(const IVec& v) {
    long long w = weight_of(v);
    IVec p{v.x / w, v.y / w};
    IVec c1, c2;
    primitive_frame(p, c1, c2);
    auto apply = [&](long long x, long long y) {
        return IVec{c1.x * x + c2.x * y, c1.y * x + c2.y * y};
    };
    IVec v1 = apply(-1, w);
    IVec v2 = apply(-w + 1, -w);
    if (!((v1 + v2) + v).is_zero() || weight_of(v1) != 1 || weight_of(v2) != 1)
        throw std::logic_error("primitive decomposition failed");
    return {v1, v2};
}

struct StarRef {
    IVec dir;  // outward from the vertex
    bool is_end;
    int idx;
};

std::vector<StarRef> star_of(const CombType& c, int v) {
    std::vector<StarRef> r;
    for (size_t i = 0; i < c.edges.size(); ++i) {
        if (c.edges[i].from == v) r.push_back({c.edges[i].dir, false, static_cast<int>(i)});
        if (c.edges[i].to == v) r.push_back({-c.edges[i].dir, false, static_cast<int>(i)});
    }
    for (size_t i = 0; i < c.ends.size(); ++i)
        if (c.ends[i].vertex == v) r.push_back({c.ends[i].dir, true, static_cast<int>(i)});
    return r;
}

int next_end_label(const Degree& d) { return d.size() + 1; }

int next_mark_label(const CombType& c) {
    int m = 0;
    for (const auto& mk : c.markings) m = std::max(m, mk.label);
    return m + 1;
}

// Reattach the star item (an edge or end at vertex v) to vertex w instead.
void reattach(CombType& c, const StarRef& it, int v, int w) {
    if (it.is_end) {
        c.ends[it.idx].vertex = w;
    } else {
        auto& e = c.edges[it.idx];
        (e.from == v ? e.from : e.to) = w;
    }
}

// Drop vertex v (already isolated) by compacting ids.
void drop_vertex(CombType& c, int v) {
    for (auto& e : c.edges) {
        if (e.from == v || e.to == v) throw std::logic_error("dropping a non-isolated vertex");
        if (e.from > v) --e.from;
        if (e.to > v) --e.to;
    }
    for (auto& e : c.ends) {
        if (e.vertex == v) throw std::logic_error("dropping a non-isolated vertex");
        if (e.vertex > v) --e.vertex;
    }
    for (auto& m : c.markings) {
        if (m.vertex == v) throw std::logic_error("dropping a marked vertex");
        if (m.vertex > v) --m.vertex;
    }
    --c.num_vertices;
}

void remove_marking_at(CombType& c, int v) {
    c.markings.erase(std::remove_if(c.markings.begin(), c.markings.end(),
                                    [&](const CombType::Marking& m) { return m.vertex == v; }),
                     c.markings.end());
}

// Replace an even star item by a chain item -> new type-(6) vertex with two
// primitive odd ends and a complex marking.
void crown_with_six(FormalCurve& fc, const StarRef& it, int v) {
    CombType& c = fc.comb;
    int w = c.add_vertex();
    reattach(c, it, v, w);
    auto [v1, v2] = primitive_decomposition(it.dir);
    c.add_end(w, next_end_label(fc.deg), v1);
    fc.deg.ends.push_back(v1);
    c.add_end(w, next_end_label(fc.deg), v2);
    fc.deg.ends.push_back(v2);
    c.add_marking(w, next_mark_label(c), MarkKind::Complex);
}

} // namespace

bool broccolize_step(FormalCurve& fc) {
    std::string err;
    auto oriented = natural_orient(fc.comb, fc.deg, &err);
    if (!oriented) throw std::invalid_argument("broccolize needs an orientable curve: " + err);

    int target = -1;
    OldTag tag = OldTag::None;
    for (int v = 0; v < fc.comb.num_vertices && target < 0; ++v) {
        OldTag t = classify_old_vertex(*oriented, v);
        if (t == OldTag::T7 || t == OldTag::ForbiddenEvenOut || t == OldTag::ForbiddenAllEvenMark) {
            target = v;
            tag = t;
        }
    }
    if (target < 0) return false;

    CombType& c = fc.comb;
    auto star = star_of(c, target);

    if (tag == OldTag::T7) {
        // (a): real-marked vertex with two even edges -> two vertices of
        // type (6); the marking disappears.
        remove_marking_at(c, target);
        for (const auto& it : star) crown_with_six(fc, it, target);
        drop_vertex(c, target);
        return true;
    }
    if (tag == OldTag::ForbiddenAllEvenMark) {
        // (c): complex-marked vertex, three even edges -> three vertices of
        // type (6).
        remove_marking_at(c, target);
        for (const auto& it : star) crown_with_six(fc, it, target);
        drop_vertex(c, target);
        return true;
    }

    // (b): unmarked 3-valent vertex, one even edge oriented away. The even
    // edge keeps its direction and ends at a type-(6) vertex whose two odd
    // ends repeat the directions at (b); the old odd edges are cut loose.
    int w = c.add_vertex();
    std::vector<IVec> odd_dirs;
    for (const auto& it : star) {
        if (is_even_dir(it.dir)) {
            reattach(c, it, target, w);
            continue;
        }
        odd_dirs.push_back(it.dir);
        if (it.is_end) {
            // a cut odd end loses its vertex entirely; drop it (odd-weight
            // end factors carry no (q+q^{-1}) order and no parity count)
            c.ends[it.idx].vertex = -2;
        } else {
            auto& e = c.edges[it.idx];
            int far = e.from == target ? e.to : e.from;
            // the far side keeps an unbounded ray of the same line direction
            c.add_end(far, next_end_label(fc.deg), -it.dir);
            fc.deg.ends.push_back(-it.dir);
            e.from = e.to = -1;  // mark for removal
        }
    }
    c.ends.erase(std::remove_if(c.ends.begin(), c.ends.end(),
                                [](const CombType::End& e) { return e.vertex == -2; }),
                 c.ends.end());
    c.edges.erase(std::remove_if(c.edges.begin(), c.edges.end(),
                                 [](const CombType::Edge& e) { return e.from < 0; }),
                  c.edges.end());
    // two fresh odd ends at w with the directions the vertex (b) had
    for (const IVec& d : odd_dirs) {
        c.add_end(w, next_end_label(fc.deg), d);
        fc.deg.ends.push_back(d);
    }
    c.add_marking(w, next_mark_label(c), MarkKind::Complex);
    drop_vertex(c, target);
    return true;
}

FormalCurve broccolize(const FormalCurve& curve) {
    FormalCurve fc = curve;
    int guard = 0;
    while (broccolize_step(fc)) {
        if (++guard > 1000) throw std::logic_error("broccolization did not terminate");
    }
    return fc;
}

// ---------------------------------------------------------------------------
namespace {

InvariantResult sum_over(const Degree& deg, int r, int s, const EnumerationReport& rep,
                         const std::string& name, bool descendant_filter, bool simple_ends) {
    if (rep.degenerate)
        throw std::runtime_error("invariant over a degenerate enumeration: " + rep.degenerate_reason);
    // Curve multiplicities reduce to Laurent polynomials individually; sum
    // those directly and keep a fraction tail for any term that does not.
    QLaurent lsum;
    QFraction fsum;
    bool have_tail = false;
    long long count = 0;
    for (const auto& ex : rep.curves) {
        CurveClassFlags flags = curve_class_predicates(ex.curve.comb, deg);
        bool in = descendant_filter ? flags.is_descendant : flags.is_refined_broccoli;
        if (!in) continue;
        QFraction m = simple_ends ? refined_mult_simple_ends(ex.curve.comb, deg)
                                  : refined_mult(ex.curve.comb, deg);
        Rat scale(1, static_cast<unsigned long>(ex.aut_order));
        if (auto red = m.reduce()) {
            lsum = lsum + *red * scale;
        } else {
            fsum = fsum + m * scale;
            have_tail = true;
        }
        ++count;
    }
    QFraction total = QFraction::of(lsum);
    if (have_tail) total = total + fsum;
    auto reduced = total.reduce();
    if (!reduced) throw std::logic_error("invariant total did not reduce to a Laurent polynomial");
    InvariantResult out;
    out.name = name;
    out.value = to_y(*reduced);
    out.degree = deg;
    out.r = r;
    out.s = s;
    out.curve_count = count;
    out.g_order = symmetry_order(deg);
    return out;
}

} // namespace

InvariantResult invariant_rB(const Degree& deg, int r, int s, const EnumerationReport& rep) {
    return sum_over(deg, r, s, rep, "rB", false, false);
}

InvariantResult invariant_desc(const Degree& deg, int r, int s, const EnumerationReport& rep) {
    return sum_over(deg, r, s, rep, "desc", true, false);
}

InvariantResult invariant_desc_star(const Degree& deg, int r, int s, const EnumerationReport& rep) {
    return sum_over(deg, r, s, rep, "desc_star", true, true);
}

InvariantResult invariant_rB_seeded(const Degree& deg, int r, int s, std::uint64_t seed) {
    auto [cfg, rep] = random_config_enumerated(deg, r, s, seed);
    InvariantResult res = invariant_rB(deg, r, s, rep);
    res.seeds = {seed};
    return res;
}

Rat i_alpha(const Degree& deg) {
    Rat p(1);
    for (int j : deg.fixed) p *= rat_of(deg.weight(j));
    return p;
}

Rat trop_descendant(const Degree& deg, int k0, int k1, const EnumerationReport& rep) {
    if (rep.degenerate)
        throw std::runtime_error("descendant count over a degenerate enumeration");
    (void)k0;
    (void)k1;
    Rat total(0);
    for (const auto& ex : rep.curves) {
        CurveClassFlags flags = curve_class_predicates(ex.curve.comb, deg);
        if (!flags.is_descendant) continue;
        Rat term(static_cast<long>(descendant_mult(ex.curve.comb)),
                 static_cast<unsigned long>(ex.aut_order));
        term.canonicalize();
        total += term;
    }
    return total / i_alpha(deg);
}

Rat trop_descendant_unordered(const Degree& deg, int k0, int k1, std::uint64_t seed) {
    const int m = k0 + k1;
    // every assignment of the psi-power to k1 of the m markings reuses the
    // same point set with roles permuted
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::uint64_t mixed = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt);
        Config base = random_config(deg, k0, k1, mixed);
        Rat total(0);
        bool degenerate = false;
        std::vector<bool> pattern(m, false);
        std::function<bool(int, int)> walk = [&](int pos, int ones) -> bool {
            if (degenerate) return false;
            if (pos == m) {
                if (ones != k1) return true;
                // markings with pattern true become the 4-valent ones
                Config cfg = base;
                cfg.points.clear();
                for (int i = 0; i < m; ++i)
                    if (!pattern[i]) cfg.points.push_back(base.points[i]);
                for (int i = 0; i < m; ++i)
                    if (pattern[i]) cfg.points.push_back(base.points[i]);
                EnumerationReport rep = enumerate_through(deg, k0, k1, cfg);
                if (rep.degenerate) { degenerate = true; return false; }
                total += trop_descendant(deg, k0, k1, rep);
                return true;
            }
            if (ones > k1) return true;
            pattern[pos] = false;
            if (!walk(pos + 1, ones)) return false;
            pattern[pos] = true;
            if (!walk(pos + 1, ones + 1)) return false;
            pattern[pos] = false;
            return true;
        };
        walk(0, 0);
        if (!degenerate) return total;
    }
    throw std::runtime_error("no configuration generic for all marking assignments");
}

// ---------------------------------------------------------------------------
QFraction refined_welschinger_mult(const FormalCurve& curve) {
    const CombType& comb = curve.comb;
    const Degree& deg = curve.deg;
    QFraction f = QFraction::one();
    for (const auto& e : comb.ends)
        f = f * end_mult(weight_of(e.dir), deg.is_fixed(e.label));
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(comb, v);
        auto star = star_of(comb, v);
        int evens = 0;
        for (const auto& it : star) evens += is_even_dir(it.dir) ? 1 : 0;
        switch (cls.tag) {
        case VertexTag::TypeI:
            continue;  // (1) and (7) count 1
        case VertexTag::TypeII:
            f = f * QFraction::of(bracket_minus(cls.mikhalkin_a));  // (2),(3),(4)
            continue;
        case VertexTag::TypeIII:
            if (evens == 0 || cls.mikhalkin_a == 0) {  // (5), (6b)
                f = f * plus_bracket_any(cls.mikhalkin_a);
                continue;
            }
            throw std::invalid_argument("vertex (6a) is not allowed in a Welschinger curve");
        default: {
            // vertex (8): unmarked 4-valent, two even edges, two odd ends
            if (!comb.markings_at(v).empty() || star.size() != 4 || evens != 2)
                throw std::invalid_argument("not a Welschinger curve vertex");
            std::vector<IVec> ev;
            for (const auto& it : star) {
                if (is_even_dir(it.dir)) ev.push_back(it.dir);
                else if (!it.is_end)
                    throw std::invalid_argument("odd edges of vertex (8) must be ends");
            }
            long long a = std::llabs(det(ev[0], ev[1]));
            // 2 (q^a - q^{-a}) / (q^2 - q^{-2})
            QLaurent num = (QLaurent::monomial(static_cast<int>(a), 1) -
                            QLaurent::monomial(static_cast<int>(-a), 1)) * Rat(2);
            QLaurent den = QLaurent::monomial(2, 1) - QLaurent::monomial(-2, 1);
            f = f * QFraction(std::move(num), std::move(den));
        }
        }
    }
    return f;
}

QFraction mixed_mult(const CombType& comb, const Degree& deg, MixedScheme scheme) {
    if (scheme == MixedScheme::Refined) return refined_mult(comb, deg);
    QFraction f = ends_factor(comb, deg, false);
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(comb, v);
        switch (cls.tag) {
        case VertexTag::TypeI: break;
        case VertexTag::TypeII:
            f = f * (scheme == MixedScheme::IntTimesPlus
                         ? QFraction::of(QLaurent::monomial(0, rat_of(cls.mikhalkin_a)))
                         : QFraction::of(bracket_minus(cls.mikhalkin_a)));
            break;
        case VertexTag::TypeIII:
            if (scheme == MixedScheme::IntTimesPlus) f = f * plus_bracket_any(cls.mikhalkin_a);
            // MinusTimesOne: factor 1
            break;
        default:
            throw std::invalid_argument("mixed multiplicity needs vertex types I-III");
        }
    }
    return f;
}

QFraction mixed_total(const Degree& deg, const EnumerationReport& rep, MixedScheme scheme) {
    if (rep.degenerate) throw std::runtime_error("mixed total over a degenerate enumeration");
    QFraction total;
    for (const auto& ex : rep.curves) {
        CurveClassFlags flags = curve_class_predicates(ex.curve.comb, deg);
        if (!flags.is_refined_broccoli) continue;
        total = total + mixed_mult(ex.curve.comb, deg, scheme) *
                            Rat(1, static_cast<unsigned long>(ex.aut_order));
    }
    return total;
}

} // namespace trop
