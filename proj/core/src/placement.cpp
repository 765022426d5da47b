#include "trop/enumeration.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace trop {

const LineCondition& Config::line(int end_label) const {
    for (const auto& l : lines)
        if (l.end_label == end_label) return l;
    throw std::invalid_argument("no line condition for end " + std::to_string(end_label));
}

void Config::validate(const Degree& deg) const {
    if (static_cast<int>(points.size()) != r + s)
        throw std::invalid_argument("config needs r+s points");
    std::vector<int> f(deg.fixed.begin(), deg.fixed.end());
    if (f != fixed) throw std::invalid_argument("config fixed set disagrees with degree");
    for (int j : fixed) {
        const auto& l = line(j);
        if (l.covector.is_zero() || l.covector.x * deg.dir(j).x + l.covector.y * deg.dir(j).y != 0)
            throw std::invalid_argument("line covector does not annihilate end direction");
    }
    if (r + 2 * s + static_cast<int>(fixed.size()) != deg.size() - 1)
        throw std::invalid_argument("count mismatch: r+2s+|F| must equal |Delta|-1");
}

IVec primitive_annihilator(const IVec& v) {
    if (v.is_zero()) throw std::invalid_argument("annihilator of zero vector");
    long long g = weight_of(v);
    IVec w{-v.y / g, v.x / g};
    if (w.x < 0 || (w.x == 0 && w.y < 0)) w = -w;
    return w;
}

namespace {

// Exact Gaussian elimination. Returns: 1 unique solution, 0 inconsistent,
// -1 consistent but underdetermined.
int solve_rational(std::vector<std::vector<Rat>>& m, std::vector<Rat>& rhs, std::vector<Rat>& sol) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        for (int i = row; i < rows; ++i)
            if (m[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        std::swap(rhs[p], rhs[row]);
        Rat inv = 1 / m[row][col];
        for (int j = col; j < cols; ++j) m[row][j] *= inv;
        rhs[row] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (int j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
            rhs[i] -= f * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < rows; ++i)
        if (rhs[i] != 0) return 0;
    if (static_cast<int>(pivot_col.size()) < cols) return -1;
    sol.assign(cols, Rat(0));
    for (int i = 0; i < cols; ++i) sol[pivot_col[i]] = rhs[i];
    return 1;
}

} // namespace

PlacementOutcome solve_placement(const CombType& comb, const Degree& deg, const Config& cfg) {
    PlacementOutcome out;
    for (const auto& e : comb.edges)
        if (e.dir.is_zero()) { out.reject = RejectReason::ContractedEdge; return out; }

    // Unknowns: anchor (2) + one length per bounded edge. Express every
    // vertex position as anchor + sum of signed length*dir along the path
    // from vertex 0.
    const int nb = static_cast<int>(comb.edges.size());
    const int vars = 2 + nb;
    // coef[v] = per-edge signed multiplier on the path 0 -> v
    std::vector<std::vector<int>> coef(comb.num_vertices, std::vector<int>(nb, 0));
    {
        std::vector<bool> seen(comb.num_vertices, false);
        std::queue<int> q;
        seen[0] = true;
        q.push(0);
        while (!q.empty()) {
            int v = q.front(); q.pop();
            for (int i = 0; i < nb; ++i) {
                const auto& e = comb.edges[i];
                int other;
                int sgn;
                if (e.from == v) { other = e.to; sgn = +1; }
                else if (e.to == v) { other = e.from; sgn = -1; }
                else continue;
                if (seen[other]) continue;
                coef[other] = coef[v];
                coef[other][i] += sgn;
                seen[other] = true;
                q.push(other);
            }
        }
        for (int v = 0; v < comb.num_vertices; ++v)
            if (!seen[v]) throw std::invalid_argument("solve_placement: disconnected type");
    }

    std::vector<std::vector<Rat>> m;
    std::vector<Rat> rhs;
    auto add_point_row = [&](int vertex, bool ycoord, const Rat& value) {
        std::vector<Rat> row(vars, Rat(0));
        row[ycoord ? 1 : 0] = 1;
        for (int i = 0; i < nb; ++i)
            if (coef[vertex][i] != 0)
                row[2 + i] = rat_of(coef[vertex][i]) * rat_of(ycoord ? comb.edges[i].dir.y : comb.edges[i].dir.x);
        m.push_back(std::move(row));
        rhs.push_back(value);
    };

    for (const auto& mk : comb.markings) {
        const QPoint& p = cfg.point(mk.label);
        add_point_row(mk.vertex, false, p.x);
        add_point_row(mk.vertex, true, p.y);
    }
    for (const auto& en : comb.ends) {
        if (!deg.is_fixed(en.label)) continue;
        const auto& lc = cfg.line(en.label);
        std::vector<Rat> row(vars, Rat(0));
        row[0] = rat_of(lc.covector.x);
        row[1] = rat_of(lc.covector.y);
        for (int i = 0; i < nb; ++i) {
            long long c = comb.edges[i].dir.x * lc.covector.x + comb.edges[i].dir.y * lc.covector.y;
            if (coef[en.vertex][i] != 0 && c != 0) row[2 + i] = rat_of(coef[en.vertex][i]) * rat_of(c);
        }
        m.push_back(std::move(row));
        rhs.push_back(lc.value);
    }

    std::vector<Rat> sol;
    int rc = solve_rational(m, rhs, sol);
    if (rc == 0) { out.reject = RejectReason::NoSolution; return out; }
    if (rc < 0) { out.reject = RejectReason::Degenerate; return out; }

    PlacedCurve pc;
    pc.comb = comb;
    pc.anchor = {sol[0], sol[1]};
    pc.lengths.assign(nb, Rat(0));
    for (int i = 0; i < nb; ++i) {
        pc.lengths[i] = sol[2 + i];
        if (pc.lengths[i] == 0) { out.reject = RejectReason::Degenerate; return out; }
        if (pc.lengths[i] < 0) { out.reject = RejectReason::NegativeLength; return out; }
    }
    out.curve = std::move(pc);
    return out;
}

} // namespace trop
