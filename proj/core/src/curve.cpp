#include "trop/curve.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace trop {

bool Degree::balanced() const {
    IVec s;
    for (const auto& v : ends) s = s + v;
    return s.is_zero();
}

void Degree::validate() const {
    if (ends.empty()) throw std::invalid_argument("empty degree");
    for (const auto& v : ends)
        if (v.is_zero()) throw std::invalid_argument("zero direction vector in degree");
    for (int j : fixed)
        if (j < 1 || j > size()) throw std::invalid_argument("fixed label out of range");
    if (!balanced()) throw std::invalid_argument("degree is not balanced");
}

Degree Degree::p2(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    Degree deg;
    for (int i = 0; i < d; ++i) deg.ends.push_back({-1, 0});
    for (int i = 0; i < d; ++i) deg.ends.push_back({0, -1});
    for (int i = 0; i < d; ++i) deg.ends.push_back({1, 1});
    return deg;
}

unsigned long long symmetry_order(const Degree& deg) {
    std::map<IVec, unsigned long long> count;
    for (int i = 1; i <= deg.size(); ++i)
        if (!deg.is_fixed(i)) count[deg.dir(i)]++;
    unsigned long long g = 1;
    for (const auto& [v, c] : count)
        for (unsigned long long k = 2; k <= c; ++k) g *= k;
    return g;
}

namespace {

struct StarItem {
    IVec dir;     // outward from the vertex
    bool is_end;  // bounded edge otherwise
    int idx;      // index into ends/edges
};

std::vector<StarItem> star_items(const CombType& c, int v) {
    std::vector<StarItem> r;
    for (size_t i = 0; i < c.edges.size(); ++i) {
        if (c.edges[i].from == v) r.push_back({c.edges[i].dir, false, static_cast<int>(i)});
        if (c.edges[i].to == v) r.push_back({-c.edges[i].dir, false, static_cast<int>(i)});
    }
    for (size_t i = 0; i < c.ends.size(); ++i)
        if (c.ends[i].vertex == v) r.push_back({c.ends[i].dir, true, static_cast<int>(i)});
    return r;
}

// True when the star item is oriented away from the vertex.
bool oriented_away(const CombType& c, int v, const StarItem& it) {
    if (!c.oriented) throw std::logic_error("orientation queried on unoriented type");
    if (it.is_end) return c.end_orient.at(it.idx) > 0;
    const auto& e = c.edges[it.idx];
    int o = c.edge_orient.at(it.idx);
    return e.from == v ? o > 0 : o < 0;
}

} // namespace

bool CombType::is_forest() const {
    std::vector<int> parent(num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (const auto& e : edges) {
        int a = find(e.from), b = find(e.to);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

bool CombType::is_tree() const {
    if (num_vertices == 0) return false;
    return is_forest() && static_cast<int>(edges.size()) == num_vertices - 1;
}

bool CombType::balanced_at(int vertex) const {
    IVec s;
    for (const auto& it : star_items(*this, vertex)) s = s + it.dir;
    return s.is_zero();
}

bool CombType::balanced() const {
    for (int v = 0; v < num_vertices; ++v)
        if (!balanced_at(v)) return false;
    return true;
}

std::vector<IVec> CombType::star(int vertex) const {
    std::vector<IVec> r;
    for (const auto& it : star_items(*this, vertex)) r.push_back(it.dir);
    return r;
}

int CombType::valence(int vertex) const {
    int n = static_cast<int>(star_items(*this, vertex).size());
    for (const auto& m : markings)
        if (m.vertex == vertex) ++n;
    return n;
}

std::vector<int> CombType::markings_at(int vertex) const {
    std::vector<int> r;
    for (size_t i = 0; i < markings.size(); ++i)
        if (markings[i].vertex == vertex) r.push_back(static_cast<int>(i));
    return r;
}

int CombType::cell_dimension() const {
    // Markings are contracted and stored separately, so every entry of
    // `edges` is a bounded edge of the image graph.
    return 2 + static_cast<int>(edges.size());
}

namespace {

std::string ivec_str(const IVec& v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

std::string encode_subtree(const CombType& c, int vertex, int parent_edge) {
    std::vector<std::string> items;
    for (const auto& it : star_items(c, vertex)) {
        if (it.is_end) {
            items.push_back("E" + std::to_string(c.ends[it.idx].label) + ivec_str(it.dir));
        } else if (it.idx != parent_edge) {
            const auto& e = c.edges[it.idx];
            int other = e.from == vertex ? e.to : e.from;
            items.push_back("B" + ivec_str(it.dir) + "[" + encode_subtree(c, other, it.idx) + "]");
        }
    }
    for (int mi : c.markings_at(vertex)) {
        const auto& m = c.markings[mi];
        items.push_back((m.kind == MarkKind::Real ? "R" : "C") + std::to_string(m.label));
    }
    std::sort(items.begin(), items.end());
    std::string out = "{";
    for (const auto& s : items) out += s + ";";
    return out + "}";
}

} // namespace

std::string CombType::canonical_key() const {
    // Root at the vertex carrying the smallest end label (or, failing that,
    // the smallest marking label); label-respecting isomorphism then equals
    // string equality of the rooted encodings.
    int root = -1;
    int best = INT32_MAX;
    for (const auto& e : ends)
        if (e.label < best) { best = e.label; root = e.vertex; }
    if (root < 0) {
        for (const auto& m : markings)
            if (m.label < best) { best = m.label; root = m.vertex; }
    }
    if (root < 0) throw std::logic_error("canonical_key needs an end or marking");
    return encode_subtree(*this, root, -1);
}

VertexClass classify_vertex(const CombType& comb, int vertex) {
    VertexClass out;
    auto items = star_items(comb, vertex);
    int real_marks = 0, complex_marks = 0;
    for (int mi : comb.markings_at(vertex))
        (comb.markings[mi].kind == MarkKind::Real ? real_marks : complex_marks)++;

    int end_pairs = 0;
    for (size_t i = 0; i < items.size(); ++i)
        for (size_t j = i + 1; j < items.size(); ++j)
            if (items[i].is_end && items[j].is_end && items[i].dir == items[j].dir) ++end_pairs;
    out.double_end = end_pairs > 0;

    if (real_marks + complex_marks > 1) { out.tag = VertexTag::Invalid; return out; }

    if (real_marks == 1 && items.size() == 2) {
        if ((items[0].dir + items[1].dir).is_zero()) {
            out.tag = VertexTag::TypeI;
            return out;
        }
        out.tag = VertexTag::Invalid;
        return out;
    }
    if (real_marks == 0 && complex_marks == 0 && items.size() == 3) {
        out.tag = VertexTag::TypeII;
    } else if (complex_marks == 1 && items.size() == 3) {
        out.tag = VertexTag::TypeIII;
    } else if (real_marks + complex_marks == 1 && items.size() > 3) {
        out.tag = VertexTag::DescendantHigher;
        return out;
    } else {
        out.tag = VertexTag::Invalid;
        return out;
    }

    // Mikhalkin multiplicity of the 3-valent image vertex. The three pairwise
    // determinants coincide by balancing; verify instead of trusting.
    long long a01 = std::abs(det(items[0].dir, items[1].dir));
    long long a12 = std::abs(det(items[1].dir, items[2].dir));
    long long a20 = std::abs(det(items[2].dir, items[0].dir));
    if (a01 != a12 || a12 != a20)
        throw std::logic_error("balancing violated: pairwise determinants disagree");
    out.mikhalkin_a = a01;
    return out;
}

OldTag classify_old_vertex(const CombType& comb, int vertex) {
    VertexClass cls = classify_vertex(comb, vertex);
    auto items = star_items(comb, vertex);
    int evens = 0;
    for (const auto& it : items) evens += is_even_dir(it.dir) ? 1 : 0;

    switch (cls.tag) {
    case VertexTag::TypeI:
        return evens == 0 ? OldTag::T1 : OldTag::T7;
    case VertexTag::TypeII:
        if (evens == 0) return OldTag::T2;
        if (evens == 3) return OldTag::T4;
        if (evens == 1) {
            for (const auto& it : items)
                if (is_even_dir(it.dir))
                    return oriented_away(comb, vertex, it) ? OldTag::ForbiddenEvenOut : OldTag::T3;
        }
        return OldTag::None;  // two even edges cannot balance
    case VertexTag::TypeIII:
        if (evens == 0) return OldTag::T5;
        if (evens == 3) return OldTag::ForbiddenAllEvenMark;
        if (evens == 1) return cls.mikhalkin_a == 0 ? OldTag::T6b : OldTag::T6a;
        return OldTag::None;
    default:
        break;
    }
    // Unmarked 4-valent with two even edges and two odd unmarked ends is the
    // Welschinger vertex (8).
    if (comb.markings_at(vertex).empty() && items.size() == 4 && evens == 2) {
        bool odds_are_ends = true;
        for (const auto& it : items)
            if (!is_even_dir(it.dir) && !it.is_end) odds_are_ends = false;
        if (odds_are_ends) return OldTag::T8;
    }
    return OldTag::None;
}

std::optional<CombType> natural_orient(const CombType& comb, const Degree& deg, std::string* error) {
    auto fail = [&](const std::string& msg) -> std::optional<CombType> {
        if (error) *error = msg;
        return std::nullopt;
    };

    std::vector<bool> marked(comb.num_vertices, false);
    for (const auto& m : comb.markings) marked[m.vertex] = true;

    // Union-find over non-marking edges and ends; pieces meeting at an
    // unmarked vertex are glued.
    const int ne = static_cast<int>(comb.edges.size());
    const int total = ne + static_cast<int>(comb.ends.size());
    std::vector<int> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    for (int v = 0; v < comb.num_vertices; ++v) {
        if (marked[v]) continue;
        auto items = star_items(comb, v);
        for (size_t i = 1; i < items.size(); ++i) {
            int a = items[0].is_end ? ne + items[0].idx : items[0].idx;
            int b = items[i].is_end ? ne + items[i].idx : items[i].idx;
            unite(a, b);
        }
    }

    // Exactly one unmarked non-fixed end per component.
    std::map<int, std::vector<int>> comp_free_ends;  // root -> end indices
    std::map<int, int> comp_any;                     // root -> witness slot
    for (int i = 0; i < total; ++i) comp_any[find(i)] = i;
    for (size_t i = 0; i < comb.ends.size(); ++i) {
        int root = find(ne + static_cast<int>(i));
        if (!deg.is_fixed(comb.ends[i].label)) comp_free_ends[root].push_back(static_cast<int>(i));
    }
    for (const auto& [root, witness] : comp_any) {
        auto it = comp_free_ends.find(root);
        int cnt = it == comp_free_ends.end() ? 0 : static_cast<int>(it->second.size());
        if (cnt != 1)
            return fail("component with " + std::to_string(cnt) +
                        " unmarked non-fixed ends: not orientable / not general position");
    }

    CombType out = comb;
    out.oriented = true;
    out.edge_orient.assign(comb.edges.size(), 0);
    out.end_orient.assign(comb.ends.size(), 0);
    for (size_t i = 0; i < comb.ends.size(); ++i)
        out.end_orient[i] = deg.is_fixed(comb.ends[i].label) ? -1 : +1;

    // Orient bounded edges towards the free end of their component: BFS over
    // unmarked vertices starting next to each free end.
    std::vector<int> dist(comb.num_vertices, -1);
    std::queue<int> q;
    for (const auto& [root, frees] : comp_free_ends) {
        int v = comb.ends[frees[0]].vertex;
        if (!marked[v] && dist[v] < 0) { dist[v] = 0; q.push(v); }
    }
    while (!q.empty()) {
        int v = q.front(); q.pop();
        for (const auto& it : star_items(comb, v)) {
            if (it.is_end) continue;
            const auto& e = comb.edges[it.idx];
            int other = e.from == v ? e.to : e.from;
            if (marked[other] || dist[other] >= 0) continue;
            dist[other] = dist[v] + 1;
            q.push(other);
        }
    }
    for (size_t i = 0; i < comb.edges.size(); ++i) {
        const auto& e = comb.edges[i];
        bool fm = marked[e.from], tm = marked[e.to];
        if (fm && tm)
            return fail("bounded edge between two marked vertices: not orientable");
        int toward;  // endpoint on the free-end side
        if (fm) toward = e.to;
        else if (tm) toward = e.from;
        else if (dist[e.from] < 0 || dist[e.to] < 0)
            return fail("component without a free end: not orientable");
        else toward = dist[e.from] < dist[e.to] ? e.from : e.to;
        out.edge_orient[i] = toward == e.to ? +1 : -1;
    }
    return out;
}

CurveClassFlags curve_class_predicates(const CombType& comb, const Degree& deg) {
    CurveClassFlags f;
    bool profile_ok = true;
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexTag t = classify_vertex(comb, v).tag;
        if (t != VertexTag::TypeI && t != VertexTag::TypeII && t != VertexTag::TypeIII) profile_ok = false;
    }
    f.is_descendant = profile_ok;

    auto oriented = comb.oriented ? std::optional<CombType>(comb) : natural_orient(comb, deg);
    f.is_refined_broccoli = profile_ok && oriented.has_value();

    if (f.is_refined_broccoli) {
        bool old_ok = true;
        for (int v = 0; v < comb.num_vertices; ++v) {
            OldTag t = classify_old_vertex(*oriented, v);
            if (t == OldTag::T7 || t == OldTag::ForbiddenEvenOut || t == OldTag::ForbiddenAllEvenMark)
                old_ok = false;
        }
        f.is_old_broccoli = old_ok;
    }

    // Welschinger-ness is a parity/valence profile; orientation constraints
    // of the underlying moduli are not re-checked here.
    bool w_ok = true;
    for (int v = 0; v < comb.num_vertices; ++v) {
        VertexClass cls = classify_vertex(comb, v);
        auto items = star_items(comb, v);
        int evens = 0;
        for (const auto& it : items) evens += is_even_dir(it.dir) ? 1 : 0;
        switch (cls.tag) {
        case VertexTag::TypeI:
            break;  // (1) or (7)
        case VertexTag::TypeII:
            break;  // (2), (3) or (4)
        case VertexTag::TypeIII:
            if (evens == 3) { w_ok = false; break; }        // not in the list
            if (evens == 1 && cls.mikhalkin_a != 0) w_ok = false;  // (6a) excluded
            if (evens == 1 && cls.mikhalkin_a == 0) {
                for (const auto& it : items)
                    if (!is_even_dir(it.dir) && !it.is_end) w_ok = false;  // (6b) odds must be ends
            }
            break;
        default: {
            // vertex (8): unmarked 4-valent, two even edges, two odd ends
            if (comb.markings_at(v).empty() && items.size() == 4 && evens == 2) {
                for (const auto& it : items)
                    if (!is_even_dir(it.dir) && !it.is_end) w_ok = false;
            } else {
                w_ok = false;
            }
        }
        }
    }
    f.is_welschinger = w_ok;
    return f;
}

QPoint PlacedCurve::vertex_position(int vertex) const {
    auto pos = all_positions();
    return pos.at(vertex);
}

std::vector<QPoint> PlacedCurve::all_positions() const {
    std::vector<QPoint> pos(comb.num_vertices);
    std::vector<bool> seen(comb.num_vertices, false);
    pos[0] = anchor;
    seen[0] = true;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int v = q.front(); q.pop();
        for (size_t i = 0; i < comb.edges.size(); ++i) {
            const auto& e = comb.edges[i];
            int other = -1;
            Rat sx, sy;
            if (e.from == v) {
                other = e.to;
                sx = lengths[i] * rat_of(e.dir.x);
                sy = lengths[i] * rat_of(e.dir.y);
            } else if (e.to == v) {
                other = e.from;
                sx = -lengths[i] * rat_of(e.dir.x);
                sy = -lengths[i] * rat_of(e.dir.y);
            } else {
                continue;
            }
            if (seen[other]) continue;
            pos[other] = {pos[v].x + sx, pos[v].y + sy};
            seen[other] = true;
            q.push(other);
        }
    }
    for (int v = 0; v < comb.num_vertices; ++v)
        if (!seen[v]) throw std::logic_error("disconnected type in placed curve");
    return pos;
}

unsigned long long placed_aut_order(const CombType& comb, const Degree& deg) {
    unsigned long long a = 1;
    for (int v = 0; v < comb.num_vertices; ++v) {
        std::map<IVec, unsigned long long> cnt;
        for (const auto& e : comb.ends)
            if (e.vertex == v && !deg.is_fixed(e.label)) cnt[e.dir]++;
        for (const auto& [d, c] : cnt)
            for (unsigned long long k = 2; k <= c; ++k) a *= k;
    }
    return a;
}

} // namespace trop
