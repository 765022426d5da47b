#include "trop/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace trop {

namespace {

// Wall signal: the configuration touches the image of a lower-dimensional
// cell (zero length, coincident lines, one-parameter family). The caller
// re-randomizes the configuration.
struct DegenerateWall : std::runtime_error {
    explicit DegenerateWall(const std::string& what) : std::runtime_error(what) {}
};

QPoint qp(const IVec& v) { return {rat_of(v.x), rat_of(v.y)}; }
QPoint sub(const QPoint& a, const QPoint& b) { return {a.x - b.x, a.y - b.y}; }
QPoint neg(const QPoint& a) { return {-a.x, -a.y}; }
Rat cross(const QPoint& a, const QPoint& b) { return a.x * b.y - a.y * b.x; }

// Solve s*a + t*b = rhs; nullopt when det(a,b) == 0.
std::optional<std::pair<Rat, Rat>> solve2(const QPoint& a, const QPoint& b, const QPoint& rhs) {
    Rat d = cross(a, b);
    if (d == 0) return std::nullopt;
    return std::make_pair(Rat(cross(rhs, b) / d), Rat(cross(a, rhs) / d));
}

// Open interval with optional infinite bounds.
struct OInterval {
    bool lo_inf = true, hi_inf = true;
    Rat lo, hi;

    static OInterval all() { return {}; }
    static OInterval positive() {
        OInterval i;
        i.lo_inf = false;
        i.lo = 0;
        return i;
    }
    bool empty() const { return !lo_inf && !hi_inf && lo >= hi; }
    bool touching() const { return !lo_inf && !hi_inf && lo == hi; }

    // -1 below, 0 strictly inside, +1 above, 2 exactly on a finite boundary
    int locate(const Rat& v) const {
        if (!lo_inf) {
            if (v < lo) return -1;
            if (v == lo) return 2;
        }
        if (!hi_inf) {
            if (v > hi) return +1;
            if (v == hi) return 2;
        }
        return 0;
    }
    // restrict to { t : c0 + c1*t > 0 }
    void require_positive(const Rat& c0, const Rat& c1) {
        if (c1 == 0) {
            if (c0 > 0) return;
            lo_inf = hi_inf = false;
            if (c0 == 0) {
                // constraint identically on its boundary: a genuine wall
                lo = 0; hi = 0;
            } else {
                // unsatisfiable for every parameter: plain emptiness
                lo = 1; hi = 0;
            }
            return;
        }
        Rat bound = -c0 / c1;
        if (c1 > 0) {
            if (lo_inf || bound > lo) { lo_inf = false; lo = bound; }
        } else {
            if (hi_inf || bound < hi) { hi_inf = false; hi = bound; }
        }
    }
    // restrict to { t : c0 + c1*t inside other }
    void require_inside(const Rat& c0, const Rat& c1, const OInterval& other) {
        if (!other.lo_inf) require_positive(c0 - other.lo, c1);
        if (!other.hi_inf) require_positive(other.hi - c0, -c1);
    }
};

// Geometric interface of a subtree hanging below an edge, as seen by the
// prospective parent vertex w:
//   Anchored:   w = base - t*up, t in iv (point-anchored: iv = (0,inf);
//               fixed-end line: iv = (-inf,inf))
//   Free:       subtree bottom u(t) = base + t*mdir with t in iv;
//               w = u(t) - l*up, l > 0
//   FreeFull:   naked end; w unconstrained
//   PinnedFree: one condition short like Free, but the bottom vertex is
//               already pinned at base and the leftover freedom is internal
//               (a thin patch met a transversal anchored line); such a branch
//               can only finish on a wall
struct GState {
    enum Kind { Anchored, Free, FreeFull, PinnedFree } kind = FreeFull;
    QPoint base, mdir;
    OInterval iv;
};

struct Shape;
using ShapePtr = std::shared_ptr<const Shape>;

struct Shape {
    enum Kind { LeafEnd, LeafFixed, Join, RealCap, CplxJoin } kind = LeafEnd;
    int label = -1;  // end class id / fixed end label / marking label
    IVec up;         // direction sum of the ends below
    ShapePtr k1, k2;
    GState st;
    std::string enc;
};

std::string encode_shape(const Shape& s) {
    switch (s.kind) {
    case Shape::LeafEnd: return "e" + std::to_string(s.label);
    case Shape::LeafFixed: return "f" + std::to_string(s.label);
    case Shape::Join: return "J(" + s.k1->enc + "," + s.k2->enc + ")";
    case Shape::RealCap: return "R" + std::to_string(s.label) + "(" + s.k1->enc + ")";
    case Shape::CplxJoin:
        return "C" + std::to_string(s.label) + "(" + s.k1->enc + "," + s.k2->enc + ")";
    }
    return "?";
}

ShapePtr make_shape(Shape s) {
    s.enc = encode_shape(s);
    return std::make_shared<const Shape>(std::move(s));
}

// ---------------------------------------------------------------------------
// Atom bookkeeping. Non-fixed ends are grouped by direction (classes); fixed
// ends and markings are individual bits.
struct Atoms {
    std::vector<IVec> class_dir;
    std::vector<std::vector<int>> class_labels;  // end labels per class, sorted
    std::vector<int> fixed_labels;               // sorted
    std::vector<IVec> fixed_dirs;
    std::vector<int> mark_labels;  // non-root markings, sorted
    std::vector<bool> mark_is_real;
    int root_mark = 0;
    bool root_real = true;

    int K() const { return static_cast<int>(class_dir.size()); }
    int NF() const { return static_cast<int>(fixed_labels.size()); }
    int NM() const { return static_cast<int>(mark_labels.size()); }
};

using Key = std::uint64_t;

struct KeyOps {
    const Atoms* at;

    int count(Key k, int cls) const { return static_cast<int>((k >> (4 * cls)) & 0xF); }
    bool fixed_bit(Key k, int i) const { return (k >> (32 + i)) & 1; }
    bool mark_bit(Key k, int i) const { return (k >> (44 + i)) & 1; }
    Key add_count(Key k, int cls, int c) const { return k + (Key(c) << (4 * cls)); }
    Key fixed_mask_bit(int i) const { return Key(1) << (32 + i); }
    Key mark_mask_bit(int i) const { return Key(1) << (44 + i); }

    int total_leaves(Key k) const {
        int n = 0;
        for (int c = 0; c < at->K(); ++c) n += count(k, c);
        for (int i = 0; i < at->NF(); ++i) n += fixed_bit(k, i) ? 1 : 0;
        for (int i = 0; i < at->NM(); ++i) n += mark_bit(k, i) ? 1 : 0;
        return n;
    }
    // delta = (#non-fixed ends) - r' - 2s' of the sub-multiset; fixed ends
    // contribute one dof and one condition each and cancel.
    int delta(Key k) const {
        int d = 0;
        for (int c = 0; c < at->K(); ++c) d += count(k, c);
        for (int i = 0; i < at->NM(); ++i)
            if (mark_bit(k, i)) d -= at->mark_is_real[i] ? 1 : 2;
        return d;
    }
    IVec dir_sum(Key k) const {
        IVec v;
        for (int c = 0; c < at->K(); ++c) {
            long long n = count(k, c);
            v.x += n * at->class_dir[c].x;
            v.y += n * at->class_dir[c].y;
        }
        for (int i = 0; i < at->NF(); ++i)
            if (fixed_bit(k, i)) v = v + at->fixed_dirs[i];
        return v;
    }
    // All nonzero sub-multisets of k, ascending as packed integers.
    std::vector<Key> submultisets(Key k) const {
        std::vector<Key> out{0};
        for (int c = 0; c < at->K(); ++c) {
            int n = count(k, c);
            if (n == 0) continue;
            std::vector<Key> next;
            for (Key base : out)
                for (int take = 0; take <= n; ++take) next.push_back(add_count(base, c, take));
            out = std::move(next);
        }
        for (int i = 0; i < at->NF(); ++i) {
            if (!fixed_bit(k, i)) continue;
            std::vector<Key> next;
            for (Key base : out) {
                next.push_back(base);
                next.push_back(base | fixed_mask_bit(i));
            }
            out = std::move(next);
        }
        for (int i = 0; i < at->NM(); ++i) {
            if (!mark_bit(k, i)) continue;
            std::vector<Key> next;
            for (Key base : out) {
                next.push_back(base);
                next.push_back(base | mark_mask_bit(i));
            }
            out = std::move(next);
        }
        std::sort(out.begin(), out.end());
        out.erase(out.begin(), out.begin() + 1);  // drop the empty one
        return out;
    }
};

// tau with p = base + tau*m, assuming p-base is parallel to m (m nonzero).
Rat param_on_line(const QPoint& diff, const QPoint& m) {
    return m.x != 0 ? Rat(diff.x / m.x) : Rat(diff.y / m.y);
}

// ---------------------------------------------------------------------------
// Per-worker scratch: rejection counters stay thread-local and are merged
// after each batch.
struct Worker {
    std::map<std::string, std::uint64_t> rejected;
    void note(const char* reason) { rejected[reason]++; }
};

struct Enumerator {
    const Degree& deg;
    int r, s;
    const Config& cfg;
    int threads;

    Atoms at;
    KeyOps ko;
    std::unordered_map<Key, std::vector<ShapePtr>> memo;
    std::map<std::string, std::uint64_t> rejected;

    Enumerator(const Degree& d, int r_, int s_, const Config& c, int threads_)
        : deg(d), r(r_), s(s_), cfg(c), threads(threads_) {
        if (threads < 1) threads = 1;  // workers are opt-in; exact arithmetic
                                       // tends to be allocation-bound
        build_atoms();
        ko.at = &at;
    }

    // Runs fn(i, worker) for i in [0, n), possibly on several threads. All
    // tasks are executed even when one throws; the exception with the
    // smallest task index is rethrown so outcomes do not depend on the
    // schedule.
    template <typename Fn>
    void parallel_tasks(size_t n, Fn&& fn) {
        int nt = static_cast<int>(std::min<size_t>(static_cast<size_t>(threads), n));
        if (nt <= 1) {
            Worker w;
            std::optional<std::pair<size_t, std::exception_ptr>> err;
            for (size_t i = 0; i < n; ++i) {
                try {
                    fn(i, w);
                } catch (...) {
                    if (!err) err = {i, std::current_exception()};
                }
            }
            for (const auto& [k, v] : w.rejected) rejected[k] += v;
            if (err) std::rethrow_exception(err->second);
            return;
        }
        std::vector<Worker> workers(nt);
        std::vector<std::optional<std::pair<size_t, std::exception_ptr>>> errs(nt);
        std::atomic<size_t> next{0};
        auto body = [&](int tid) {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i, workers[tid]);
                } catch (...) {
                    if (!errs[tid] || errs[tid]->first > i) errs[tid] = {i, std::current_exception()};
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(body, t);
        for (auto& th : pool) th.join();
        for (const auto& w : workers)
            for (const auto& [k, v] : w.rejected) rejected[k] += v;
        std::optional<std::pair<size_t, std::exception_ptr>> first;
        for (const auto& e : errs)
            if (e && (!first || e->first < first->first)) first = e;
        if (first) std::rethrow_exception(first->second);
    }

    void build_atoms() {
        if (r + s < 1) throw std::invalid_argument("need at least one marking");
        std::map<IVec, std::vector<int>> classes;
        for (int i = 1; i <= deg.size(); ++i) {
            if (deg.is_fixed(i)) {
                at.fixed_labels.push_back(i);
                at.fixed_dirs.push_back(deg.dir(i));
            } else {
                classes[deg.dir(i)].push_back(i);
            }
        }
        for (auto& [v, labels] : classes) {
            at.class_dir.push_back(v);
            at.class_labels.push_back(labels);
        }
        at.root_mark = r >= 1 ? 1 : r + 1;
        at.root_real = r >= 1;
        for (int m = 1; m <= r + s; ++m) {
            if (m == at.root_mark) continue;
            at.mark_labels.push_back(m);
            at.mark_is_real.push_back(m <= r);
        }
        if (at.K() > 8 || at.NF() > 12 || at.NM() > 20)
            throw std::invalid_argument("problem size beyond desk scale key packing");
        for (int c = 0; c < at.K(); ++c)
            if (static_cast<int>(at.class_labels[c].size()) > 15)
                throw std::invalid_argument("too many parallel ends");
    }

    // --- geometric merges -------------------------------------------------

    // New unmarked vertex joining subtree a (Anchored) with subtree b.
    std::optional<GState> join_states(Worker& wk, const GState& a, const IVec& up_a,
                                      const GState& b, const IVec& up_b) const {
        const QPoint da = qp(up_a), db = qp(up_b);
        if (b.kind == GState::Anchored || b.kind == GState::PinnedFree) {
            // u = a.base - ta*da = b.base - tb*db
            OInterval biv = b.kind == GState::Anchored ? b.iv : OInterval::positive();
            auto st = solve2(da, neg(db), sub(a.base, b.base));
            if (!st) {
                if (cross(sub(b.base, a.base), da) == 0)
                    throw DegenerateWall("coincident anchored lines");
                wk.note("parallel_lines");
                return std::nullopt;
            }
            auto [ta, tb] = *st;
            int la = a.iv.locate(ta), lb = biv.locate(tb);
            if (la == 2 || lb == 2) throw DegenerateWall("zero length at anchored join");
            if (la != 0 || lb != 0) { wk.note("length_sign"); return std::nullopt; }
            GState g;
            g.kind = b.kind == GState::Anchored ? GState::Anchored : GState::PinnedFree;
            g.base = {a.base.x - ta * da.x, a.base.y - ta * da.y};
            g.iv = OInterval::positive();
            return g;
        }
        if (b.kind == GState::FreeFull) {
            GState g;
            g.kind = GState::Free;
            g.base = a.base;
            g.mdir = neg(da);
            g.iv = a.iv;
            return g;
        }
        // b free: u(ta) = a.base - ta*da must equal b.base + tb*m - lb*db
        const QPoint m = b.mdir;
        Rat det0 = cross(m, neg(db));
        if (det0 == 0) {
            // Thin patch: the free side only reaches the line through b.base
            // along m. A transversal anchored line pins the new vertex but
            // leaves the patch parameter as an internal degree of freedom.
            // a.base - ta*da = b.base + tau*m  <=>  ta*da + tau*m = a.base - b.base
            auto st = solve2(da, m, sub(a.base, b.base));
            if (!st) {
                if (cross(sub(b.base, a.base), da) == 0)
                    throw DegenerateWall("anchored line inside thin patch");
                wk.note("parallel_lines");
                return std::nullopt;
            }
            auto [ta, tau] = *st;
            int lta = a.iv.locate(ta);
            if (lta == 2) throw DegenerateWall("boundary hit at thin join");
            if (lta != 0) { wk.note("length_sign"); return std::nullopt; }
            Rat kappa = param_on_line(db, m);  // db = kappa*m, kappa != 0
            OInterval l = OInterval::positive();
            l.require_inside(tau, kappa, b.iv);  // tb = tau + l*kappa must lie in b.iv
            if (l.empty() && !l.touching()) { wk.note("length_sign"); return std::nullopt; }
            if (l.touching()) throw DegenerateWall("boundary hit at thin join");
            GState g;
            g.kind = GState::PinnedFree;
            g.base = {a.base.x - ta * da.x, a.base.y - ta * da.y};
            g.iv = OInterval::positive();
            return g;
        }
        auto c0 = solve2(m, neg(db), sub(a.base, b.base));
        auto c1 = solve2(m, neg(db), neg(da));
        auto [tb0, lb0] = *c0;
        auto [tb1, lb1] = *c1;
        OInterval iv = a.iv;
        iv.require_inside(tb0, tb1, b.iv);
        iv.require_positive(lb0, lb1);
        if (iv.touching()) throw DegenerateWall("interval collapsed at join");
        if (iv.empty()) { wk.note("interval_empty"); return std::nullopt; }
        GState g;
        g.kind = GState::Free;
        g.base = a.base;
        g.mdir = neg(da);
        g.iv = iv;
        return g;
    }

    // Attach the parent side of a delta-1 subtree to the pinned point p.
    bool cap_at_point(Worker& wk, const GState& st, const IVec& up, const QPoint& p) const {
        if (st.kind == GState::FreeFull) return true;
        if (st.kind == GState::PinnedFree) {
            // p must land on the line above the pinned vertex; when it does,
            // the internal freedom survives into a one-parameter family
            if (cross(sub(p, st.base), qp(up)) != 0) { wk.note("point_off_line"); return false; }
            Rat ell = param_on_line(sub(st.base, p), qp(up));  // p = base - ell*up
            if (ell > 0) throw DegenerateWall("one-parameter family through a marked point");
            if (ell == 0) throw DegenerateWall("marked point on a pinned vertex");
            wk.note("length_sign");
            return false;
        }
        if (st.kind != GState::Free) throw std::logic_error("cap on anchored subtree");
        const QPoint d = qp(up);
        Rat det0 = cross(st.mdir, neg(d));
        if (det0 == 0) {
            if (cross(sub(p, st.base), st.mdir) != 0) { wk.note("point_off_line"); return false; }
            Rat tau = param_on_line(sub(p, st.base), st.mdir);
            Rat kappa = param_on_line(d, st.mdir);
            OInterval l = OInterval::positive();
            l.require_inside(tau, kappa, st.iv);
            if (l.empty() && !l.touching()) { wk.note("length_sign"); return false; }
            throw DegenerateWall("one-parameter family at marked point");
        }
        auto sol = solve2(st.mdir, neg(d), sub(p, st.base));
        auto [t, l] = *sol;
        int lt = st.iv.locate(t);
        if (lt == 2 || l == 0) throw DegenerateWall("boundary hit at marked point");
        if (lt != 0 || l < 0) { wk.note("length_sign"); return false; }
        return true;
    }

    // --- DP over leaf sub-multisets ----------------------------------------

    const std::vector<ShapePtr>& shapes(Key k) const {
        static const std::vector<ShapePtr> none;
        auto it = memo.find(k);
        return it == memo.end() ? none : it->second;
    }

    void build_leaf_shapes(Key k, std::vector<ShapePtr>& out) const {
        for (int c = 0; c < at.K(); ++c) {
            if (ko.count(k, c) != 1) continue;
            Shape s;
            s.kind = Shape::LeafEnd;
            s.label = c;
            s.up = at.class_dir[c];
            s.st.kind = GState::FreeFull;
            out.push_back(make_shape(std::move(s)));
            return;
        }
        for (int i = 0; i < at.NF(); ++i) {
            if (!ko.fixed_bit(k, i)) continue;
            const auto& lc = cfg.line(at.fixed_labels[i]);
            Shape s;
            s.kind = Shape::LeafFixed;
            s.label = at.fixed_labels[i];
            s.up = at.fixed_dirs[i];
            s.st.kind = GState::Anchored;
            // any rational point on the line covector . x = value
            if (lc.covector.x != 0)
                s.st.base = {lc.value / rat_of(lc.covector.x), Rat(0)};
            else
                s.st.base = {Rat(0), lc.value / rat_of(lc.covector.y)};
            s.st.iv = OInterval::all();
            out.push_back(make_shape(std::move(s)));
            return;
        }
    }

    void build_join_shapes(Key k, Worker& wk, std::vector<ShapePtr>& out) const {
        IVec up = ko.dir_sum(k);
        if (up.is_zero()) { wk.note("contracted_edge"); return; }
        auto subs = ko.submultisets(k);
        for (Key k1 : subs) {
            Key k2 = k - k1;
            if (k2 == 0 || k1 > k2) continue;
            int d1 = ko.delta(k1), d2 = ko.delta(k2);
            if (d1 < 0 || d1 > 1 || d2 < 0 || d2 > 1) continue;
            const auto& l1 = shapes(k1);
            const auto& l2 = shapes(k2);
            if (l1.empty() || l2.empty()) continue;
            for (size_t i = 0; i < l1.size(); ++i) {
                size_t jstart = (k1 == k2) ? i : 0;
                for (size_t j = jstart; j < l2.size(); ++j) {
                    const Shape& s1 = *l1[i];
                    const Shape& s2 = *l2[j];
                    const bool a1 = s1.st.kind == GState::Anchored;
                    const bool a2 = s2.st.kind == GState::Anchored;
                    if (!a1 && !a2) continue;  // delta gate already excludes
                    std::optional<GState> g =
                        a1 ? join_states(wk, s1.st, s1.up, s2.st, s2.up)
                           : join_states(wk, s2.st, s2.up, s1.st, s1.up);
                    if (!g) continue;
                    Shape s;
                    s.kind = Shape::Join;
                    s.up = up;
                    s.k1 = l1[i];
                    s.k2 = l2[j];
                    if (s.k2->enc < s.k1->enc) std::swap(s.k1, s.k2);
                    s.st = *g;
                    out.push_back(make_shape(std::move(s)));
                }
            }
        }
    }

    void build_cap_shapes(Key k, Worker& wk, std::vector<ShapePtr>& out) const {
        IVec up = ko.dir_sum(k);
        if (up.is_zero()) { wk.note("contracted_edge"); return; }
        for (int mi = 0; mi < at.NM(); ++mi) {
            if (!ko.mark_bit(k, mi)) continue;
            const QPoint& p = cfg.point(at.mark_labels[mi]);
            Key rest = k - ko.mark_mask_bit(mi);
            if (rest == 0) continue;
            if (at.mark_is_real[mi]) {
                if (ko.delta(rest) != 1) continue;
                for (const auto& child : shapes(rest)) {
                    if (!cap_at_point(wk, child->st, child->up, p)) continue;
                    Shape s;
                    s.kind = Shape::RealCap;
                    s.label = at.mark_labels[mi];
                    s.up = up;
                    s.k1 = child;
                    s.st.kind = GState::Anchored;
                    s.st.base = p;
                    s.st.iv = OInterval::positive();
                    out.push_back(make_shape(std::move(s)));
                }
            } else {
                auto subs = ko.submultisets(rest);
                for (Key k1 : subs) {
                    Key k2 = rest - k1;
                    if (k2 == 0 || k1 > k2) continue;
                    if (ko.delta(k1) != 1 || ko.delta(k2) != 1) continue;
                    const auto& l1 = shapes(k1);
                    const auto& l2 = shapes(k2);
                    for (size_t i = 0; i < l1.size(); ++i) {
                        size_t jstart = (k1 == k2) ? i : 0;
                        for (size_t j = jstart; j < l2.size(); ++j) {
                            if (!cap_at_point(wk, l1[i]->st, l1[i]->up, p)) continue;
                            if (!cap_at_point(wk, l2[j]->st, l2[j]->up, p)) continue;
                            Shape s;
                            s.kind = Shape::CplxJoin;
                            s.label = at.mark_labels[mi];
                            s.up = up;
                            s.k1 = l1[i];
                            s.k2 = l2[j];
                            if (s.k2->enc < s.k1->enc) std::swap(s.k1, s.k2);
                            s.st.kind = GState::Anchored;
                            s.st.base = p;
                            s.st.iv = OInterval::positive();
                            out.push_back(make_shape(std::move(s)));
                        }
                    }
                }
            }
        }
    }

    void run_dp() {
        // Enumerate admissible keys grouped by leaf count.
        std::vector<Key> all_keys;
        std::vector<Key> stack{0};
        for (int c = 0; c < at.K(); ++c) {
            std::vector<Key> next;
            int n = static_cast<int>(at.class_labels[c].size());
            for (Key base : stack)
                for (int take = 0; take <= n; ++take) next.push_back(ko.add_count(base, c, take));
            stack = std::move(next);
        }
        for (int i = 0; i < at.NF(); ++i) {
            std::vector<Key> next;
            for (Key base : stack) {
                next.push_back(base);
                next.push_back(base | ko.fixed_mask_bit(i));
            }
            stack = std::move(next);
        }
        for (int i = 0; i < at.NM(); ++i) {
            std::vector<Key> next;
            for (Key base : stack) {
                next.push_back(base);
                next.push_back(base | ko.mark_mask_bit(i));
            }
            stack = std::move(next);
        }
        for (Key k : stack) {
            if (k == 0) continue;
            int d = ko.delta(k);
            if (d == 0 || d == 1) all_keys.push_back(k);
        }
        std::stable_sort(all_keys.begin(), all_keys.end(), [&](Key a, Key b) {
            int la = ko.total_leaves(a), lb = ko.total_leaves(b);
            return la != lb ? la < lb : a < b;
        });

        // Keys of equal leaf count only depend on strictly smaller ones, so
        // each size batch runs in parallel against a read-only memo.
        size_t lo = 0;
        while (lo < all_keys.size()) {
            size_t hi = lo;
            int size = ko.total_leaves(all_keys[lo]);
            while (hi < all_keys.size() && ko.total_leaves(all_keys[hi]) == size) ++hi;
            std::vector<std::vector<ShapePtr>> results(hi - lo);
            parallel_tasks(hi - lo, [&](size_t i, Worker& wk) {
                Key k = all_keys[lo + i];
                std::vector<ShapePtr> list;
                if (size == 1) {
                    build_leaf_shapes(k, list);
                } else {
                    build_join_shapes(k, wk, list);
                    if (ko.delta(k) == 0) build_cap_shapes(k, wk, list);
                }
                std::sort(list.begin(), list.end(),
                          [](const ShapePtr& a, const ShapePtr& b) { return a->enc < b->enc; });
                results[i] = std::move(list);
            });
            for (size_t i = 0; i < results.size(); ++i)
                if (!results[i].empty()) memo.emplace(all_keys[lo + i], std::move(results[i]));
            lo = hi;
        }
    }

    // --- final assembly -----------------------------------------------------

    Key full_key() const {
        Key k = 0;
        for (int c = 0; c < at.K(); ++c)
            k = ko.add_count(k, c, static_cast<int>(at.class_labels[c].size()));
        for (int i = 0; i < at.NF(); ++i) k |= ko.fixed_mask_bit(i);
        for (int i = 0; i < at.NM(); ++i) k |= ko.mark_mask_bit(i);
        return k;
    }

    void attach(CombType& comb, int parent, const Shape& s, std::vector<int>& class_cursor) const {
        switch (s.kind) {
        case Shape::LeafEnd: {
            int label = at.class_labels[s.label][class_cursor[s.label]++];
            comb.add_end(parent, label, s.up);
            return;
        }
        case Shape::LeafFixed:
            comb.add_end(parent, s.label, s.up);
            return;
        case Shape::Join: {
            int v = comb.add_vertex();
            comb.add_edge(parent, v, s.up);
            attach(comb, v, *s.k1, class_cursor);
            attach(comb, v, *s.k2, class_cursor);
            return;
        }
        case Shape::RealCap: {
            int v = comb.add_vertex();
            comb.add_edge(parent, v, s.up);
            comb.add_marking(v, s.label, MarkKind::Real);
            attach(comb, v, *s.k1, class_cursor);
            return;
        }
        case Shape::CplxJoin: {
            int v = comb.add_vertex();
            comb.add_edge(parent, v, s.up);
            comb.add_marking(v, s.label, MarkKind::Complex);
            attach(comb, v, *s.k1, class_cursor);
            attach(comb, v, *s.k2, class_cursor);
            return;
        }
        }
    }

    CombType assemble(const std::vector<ShapePtr>& children) const {
        CombType comb;
        int apex = comb.add_vertex();
        comb.add_marking(apex, at.root_mark, at.root_real ? MarkKind::Real : MarkKind::Complex);
        std::vector<int> cursor(at.K(), 0);
        std::vector<ShapePtr> ordered = children;
        std::sort(ordered.begin(), ordered.end(),
                  [](const ShapePtr& a, const ShapePtr& b) { return a->enc < b->enc; });
        for (const auto& c : ordered) attach(comb, apex, *c, cursor);
        return comb;
    }

    void emit(std::vector<ShapePtr> children, const QPoint& proot, Worker& wk,
              std::vector<PlacedCurveEx>& out) const {
        for (const auto& c : children)
            if (!cap_at_point(wk, c->st, c->up, proot)) return;
        CombType comb = assemble(children);
        auto placed = solve_placement(comb, deg, cfg);
        if (!placed.curve) {
            if (placed.reject == RejectReason::Degenerate)
                throw DegenerateWall("placement solver found a wall");
            throw std::logic_error("enumerator and placement solver disagree on type " +
                                   comb.canonical_key());
        }
        PlacedCurveEx ex;
        ex.curve = std::move(*placed.curve);
        ex.aut_order = placed_aut_order(comb, deg);
        out.push_back(std::move(ex));
    }

    void run(EnumerationReport& rep) {
        run_dp();
        const Key full = full_key();
        const QPoint& proot = cfg.point(at.root_mark);

        // partitions of the full leaf set at the root-marking vertex
        std::vector<std::vector<Key>> parts;
        if (at.root_real) {
            for (Key k1 : ko.submultisets(full)) {
                Key k2 = full - k1;
                if (k2 == 0 || k1 > k2) continue;
                if (ko.delta(k1) != 1 || ko.delta(k2) != 1) continue;
                if (shapes(k1).empty() || shapes(k2).empty()) continue;
                parts.push_back({k1, k2});
            }
        } else {
            for (Key k1 : ko.submultisets(full)) {
                if (ko.delta(k1) != 1 || shapes(k1).empty()) continue;
                Key rest = full - k1;
                if (rest == 0) continue;
                for (Key k2 : ko.submultisets(rest)) {
                    Key k3 = rest - k2;
                    if (k3 == 0) continue;
                    if (!(k1 <= k2 && k2 <= k3)) continue;
                    if (ko.delta(k2) != 1 || ko.delta(k3) != 1) continue;
                    if (shapes(k2).empty() || shapes(k3).empty()) continue;
                    parts.push_back({k1, k2, k3});
                }
            }
        }

        std::vector<std::vector<PlacedCurveEx>> found(parts.size());
        parallel_tasks(parts.size(), [&](size_t pi, Worker& wk) {
            const auto& ks = parts[pi];
            if (ks.size() == 2) {
                const auto& l1 = shapes(ks[0]);
                const auto& l2 = shapes(ks[1]);
                for (size_t i = 0; i < l1.size(); ++i) {
                    size_t jstart = (ks[0] == ks[1]) ? i : 0;
                    for (size_t j = jstart; j < l2.size(); ++j)
                        emit({l1[i], l2[j]}, proot, wk, found[pi]);
                }
            } else {
                const auto& l1 = shapes(ks[0]);
                const auto& l2 = shapes(ks[1]);
                const auto& l3 = shapes(ks[2]);
                for (size_t i = 0; i < l1.size(); ++i)
                    for (size_t j = (ks[0] == ks[1] ? i : size_t(0)); j < l2.size(); ++j)
                        for (size_t l = (ks[1] == ks[2] ? j : size_t(0)); l < l3.size(); ++l)
                            emit({l1[i], l2[j], l3[l]}, proot, wk, found[pi]);
            }
        });
        for (auto& v : found)
            for (auto& c : v) rep.curves.push_back(std::move(c));

        std::stable_sort(rep.curves.begin(), rep.curves.end(),
                         [](const PlacedCurveEx& a, const PlacedCurveEx& b) {
                             return a.curve.comb.canonical_key() < b.curve.comb.canonical_key();
                         });
        for (size_t i = 1; i < rep.curves.size(); ++i)
            if (rep.curves[i].curve.comb.canonical_key() ==
                rep.curves[i - 1].curve.comb.canonical_key())
                throw std::logic_error("duplicate combinatorial type emitted");
        rep.rejected_types = rejected;
    }
};

} // namespace

EnumerationReport enumerate_through(const Degree& deg, int r, int s, const Config& cfg,
                                    int threads) {
    deg.validate();
    cfg.validate(deg);
    EnumerationReport rep;
    Enumerator en(deg, r, s, cfg, threads);
    try {
        en.run(rep);
    } catch (const DegenerateWall& w) {
        rep.curves.clear();
        rep.degenerate = true;
        rep.degenerate_reason = w.what();
        rep.rejected_types = en.rejected;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Labeled combinatorial type enumeration (no configuration): exponential,
// desk-scale only.
namespace {

struct LShape {
    enum Kind { LeafEnd, Join, RealCap, CplxJoin } kind = LeafEnd;
    int label = 0;  // end label or marking label
    IVec up;
    std::shared_ptr<const LShape> k1, k2;
};
using LShapePtr = std::shared_ptr<const LShape>;

struct LabeledEnum {
    const Degree& deg;
    int r, s;
    std::map<std::string, std::uint64_t>* rejected;
    int n;
    std::map<std::uint32_t, std::vector<LShapePtr>> memo;

    // leaf ids: 0..n-1 ends (label id+1), n..n+r+s-1 markings (label id-n+1)
    bool is_end(int leaf) const { return leaf < n; }
    bool is_real(int leaf) const { return leaf >= n && leaf - n < r; }
    IVec leaf_dir(int leaf) const { return is_end(leaf) ? deg.dir(leaf + 1) : IVec{0, 0}; }

    void note(const char* reason) {
        if (rejected) (*rejected)[reason]++;
    }

    IVec dir_sum(std::uint32_t set) const {
        IVec v;
        for (int i = 0; i < n; ++i)
            if (set & (1u << i)) v = v + deg.dir(i + 1);
        return v;
    }

    const std::vector<LShapePtr>& build(std::uint32_t set) {
        auto it = memo.find(set);
        if (it != memo.end()) return it->second;
        std::vector<LShapePtr> out;
        int count = __builtin_popcount(set);
        if (count == 1) {
            int leaf = __builtin_ctz(set);
            if (is_end(leaf)) {
                auto s0 = std::make_shared<LShape>();
                s0->kind = LShape::LeafEnd;
                s0->label = leaf + 1;
                s0->up = leaf_dir(leaf);
                out.push_back(s0);
            }
            // a lone marking cannot hang below an edge
        } else {
            IVec up = dir_sum(set);
            int low = __builtin_ctz(set);
            // unmarked join: lowest leaf goes into the first part
            std::uint32_t rest = set & ~(1u << low);
            for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
                std::uint32_t s1 = sub | (1u << low);
                std::uint32_t s2 = set & ~s1;
                if (s2 != 0) {
                    if (up.is_zero()) {
                        note("contracted_edge");
                    } else {
                        for (const auto& a : build(s1))
                            for (const auto& b : build(s2)) {
                                auto j = std::make_shared<LShape>();
                                j->kind = LShape::Join;
                                j->up = up;
                                j->k1 = a;
                                j->k2 = b;
                                out.push_back(j);
                            }
                    }
                }
                if (sub == 0) break;
            }
            // marked caps
            for (int leaf = n; leaf < n + r + s; ++leaf) {
                if (!(set & (1u << leaf))) continue;
                std::uint32_t restm = set & ~(1u << leaf);
                if (restm == 0) continue;
                if (up.is_zero()) { note("contracted_edge"); continue; }
                if (is_real(leaf)) {
                    for (const auto& a : build(restm)) {
                        auto c = std::make_shared<LShape>();
                        c->kind = LShape::RealCap;
                        c->label = leaf - n + 1;
                        c->up = up;
                        c->k1 = a;
                        out.push_back(c);
                    }
                } else {
                    int lowm = __builtin_ctz(restm);
                    std::uint32_t restm2 = restm & ~(1u << lowm);
                    for (std::uint32_t sub = restm2;; sub = (sub - 1) & restm2) {
                        std::uint32_t s1 = sub | (1u << lowm);
                        std::uint32_t s2 = restm & ~s1;
                        if (s2 != 0) {
                            for (const auto& a : build(s1))
                                for (const auto& b : build(s2)) {
                                    auto c = std::make_shared<LShape>();
                                    c->kind = LShape::CplxJoin;
                                    c->label = leaf - n + 1;
                                    c->up = up;
                                    c->k1 = a;
                                    c->k2 = b;
                                    out.push_back(c);
                                }
                        }
                        if (sub == 0) break;
                    }
                }
            }
        }
        return memo.emplace(set, std::move(out)).first->second;
    }

    void attach(CombType& comb, int parent, const LShape& s) const {
        switch (s.kind) {
        case LShape::LeafEnd:
            comb.add_end(parent, s.label, s.up);
            return;
        case LShape::Join: {
            int v = comb.add_vertex();
            comb.add_edge(parent, v, s.up);
            attach(comb, v, *s.k1);
            attach(comb, v, *s.k2);
            return;
        }
        case LShape::RealCap: {
            int v = comb.add_vertex();
            comb.add_edge(parent, v, s.up);
            comb.add_marking(v, s.label, MarkKind::Real);
            attach(comb, v, *s.k1);
            return;
        }
        case LShape::CplxJoin: {
            int v = comb.add_vertex();
            comb.add_edge(parent, v, s.up);
            comb.add_marking(v, s.label, MarkKind::Complex);
            attach(comb, v, *s.k1);
            attach(comb, v, *s.k2);
            return;
        }
        }
    }
};

} // namespace

std::vector<CombType> enumerate_types(const Degree& deg, int r, int s,
                                      std::map<std::string, std::uint64_t>* rejected) {
    deg.validate();
    const int n = deg.size();
    if (r + 2 * s + static_cast<int>(deg.fixed.size()) != n - 1)
        throw std::invalid_argument("count mismatch: r+2s+|F| must equal |Delta|-1");
    if (r + s < 1) throw std::invalid_argument("need at least one marking");
    if (n + r + s > 14)
        throw std::invalid_argument("labeled type enumeration limited to 14 leaves");

    LabeledEnum le{deg, r, s, rejected, n, {}};
    std::uint32_t all = (1u << (n + r + s)) - 1u;
    std::uint32_t rest = all & ~1u;  // root at end y_1

    std::vector<CombType> out;
    for (const auto& shape : le.build(rest)) {
        // the subtree apex carries end y_1; a bare-leaf shape would be a
        // vertex-free double ray, which the valence profile excludes
        if (shape->kind == LShape::LeafEnd) continue;
        CombType comb;
        int apex = comb.add_vertex();
        comb.add_end(apex, 1, deg.dir(1));
        switch (shape->kind) {
        case LShape::Join:
            le.attach(comb, apex, *shape->k1);
            le.attach(comb, apex, *shape->k2);
            break;
        case LShape::RealCap:
            comb.add_marking(apex, shape->label, MarkKind::Real);
            le.attach(comb, apex, *shape->k1);
            break;
        case LShape::CplxJoin:
            comb.add_marking(apex, shape->label, MarkKind::Complex);
            le.attach(comb, apex, *shape->k1);
            le.attach(comb, apex, *shape->k2);
            break;
        default:
            break;
        }
        out.push_back(std::move(comb));
    }
    std::stable_sort(out.begin(), out.end(), [](const CombType& a, const CombType& b) {
        return a.canonical_key() < b.canonical_key();
    });
    return out;
}

// ---------------------------------------------------------------------------
namespace {

Rat random_rat(std::mt19937_64& rng, long long spread) {
    long long span = 2 * spread + 1;
    long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(span)) - spread;
    long long den = static_cast<long long>(rng() % 8ull) + 1;
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

Config make_config(const Degree& deg, int r, int s, std::uint64_t seed, long long spread) {
    std::mt19937_64 rng(seed);
    Config cfg;
    cfg.r = r;
    cfg.s = s;
    cfg.fixed.assign(deg.fixed.begin(), deg.fixed.end());
    for (int i = 0; i < r + s; ++i) {
        Rat x = random_rat(rng, spread);
        Rat y = random_rat(rng, spread);
        cfg.points.push_back({x, y});
    }
    for (int j : cfg.fixed) {
        LineCondition lc;
        lc.end_label = j;
        lc.covector = primitive_annihilator(deg.dir(j));
        lc.value = random_rat(rng, spread);
        cfg.lines.push_back(lc);
    }
    return cfg;
}

} // namespace

std::pair<Config, EnumerationReport> random_config_enumerated(const Degree& deg, int r, int s,
                                                              std::uint64_t seed, long long spread,
                                                              int max_retries, int threads) {
    deg.validate();
    if (r + 2 * s + static_cast<int>(deg.fixed.size()) != deg.size() - 1)
        throw std::invalid_argument("count mismatch: r+2s+|F| must equal |Delta|-1");
    std::string last;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::uint64_t mixed = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt);
        Config cfg = make_config(deg, r, s, mixed, spread);
        EnumerationReport rep = enumerate_through(deg, r, s, cfg, threads);
        if (!rep.degenerate) return {std::move(cfg), std::move(rep)};
        last = rep.degenerate_reason;
    }
    throw std::runtime_error("no generic configuration after retries (seed " + std::to_string(seed) +
                             ", spread " + std::to_string(spread) + "): " + last);
}

Config random_config(const Degree& deg, int r, int s, std::uint64_t seed, long long spread) {
    return random_config_enumerated(deg, r, s, seed, spread).first;
}

} // namespace trop
