#include "trop/verification.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace trop {

namespace {

QFraction minus_frac(long long a) { return QFraction::of(bracket_minus(a)); }

QFraction plus_frac(long long a) {
    QLaurent num = QLaurent::monomial(static_cast<int>(std::llabs(a)), 1) +
                   QLaurent::monomial(static_cast<int>(-std::llabs(a)), 1);
    QLaurent den = QLaurent::monomial(1, 1) + QLaurent::monomial(-1, 1);
    return QFraction(std::move(num), std::move(den));
}

} // namespace

QFraction relation_A(const IVec& v1, const IVec& v2, const IVec& v3) {
    if (!(v1 + v2 + v3).is_zero()) throw std::invalid_argument("triple is not balanced");
    return minus_frac(det(v1, v2)) + minus_frac(det(v1, v3));
}

QFraction relation_B(const IVec& v1, const IVec& v2, const IVec& v3, const IVec& v4) {
    if (!(((v1 + v2) + v3) + v4).is_zero()) throw std::invalid_argument("quadruple is not balanced");
    QFraction t1 = minus_frac(det(v1, v2)) * minus_frac(det(v3, v4));
    QFraction t2 = minus_frac(det(v2, v3)) * minus_frac(det(v1, v4));
    QFraction t3 = minus_frac(det(v1, v3)) * minus_frac(det(v4, v2));
    return t1 + t2 + t3;
}

std::optional<QFraction> relation_C(const IVec& v1, const IVec& v2, const IVec& v3, const IVec& v4) {
    if (!(((v1 + v2) + v3) + v4).is_zero()) throw std::invalid_argument("quadruple is not balanced");
    long long a34 = det(v3, v4), a23 = det(v2, v3), a42 = det(v4, v2);
    if (a34 == 0 || a23 == 0 || a42 == 0) return std::nullopt;
    QFraction t1 = minus_frac(det(v1, v2)) * plus_frac(a34);
    QFraction t2 = plus_frac(a23) * minus_frac(det(v1, v4));
    QFraction t3 = minus_frac(det(v1, v3)) * plus_frac(a42);
    return t1 + t2 + t3;
}

namespace {

IVec random_vec(std::mt19937_64& rng, long long m) {
    long long span = 2 * m + 1;
    auto draw = [&]() {
        return static_cast<long long>(rng() % static_cast<unsigned long long>(span)) - m;
    };
    return {draw(), draw()};
}

template <typename SampleFn>
RelationFuzzReport fuzz(int samples, SampleFn&& per_sample) {
    RelationFuzzReport rep;
    rep.samples = samples;
    for (int i = 0; i < samples; ++i) per_sample(rep);
    return rep;
}

} // namespace

RelationFuzzReport fuzz_relation_A(int samples, long long m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return fuzz(samples, [&](RelationFuzzReport& rep) {
        for (;;) {
            IVec v1 = random_vec(rng, m), v2 = random_vec(rng, m);
            IVec v3 = -(v1 + v2);
            if (v1.is_zero() || v2.is_zero() || v3.is_zero()) continue;
            if (std::llabs(v3.x) > m || std::llabs(v3.y) > m) continue;
            if (!relation_A(v1, v2, v3).is_zero()) rep.violations++;
            return;
        }
    });
}

RelationFuzzReport fuzz_relation_B(int samples, long long m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return fuzz(samples, [&](RelationFuzzReport& rep) {
        for (;;) {
            IVec v1 = random_vec(rng, m), v2 = random_vec(rng, m), v3 = random_vec(rng, m);
            IVec v4 = -((v1 + v2) + v3);
            if (v1.is_zero() || v2.is_zero() || v3.is_zero() || v4.is_zero()) continue;
            if (std::llabs(v4.x) > m || std::llabs(v4.y) > m) continue;
            if (!relation_B(v1, v2, v3, v4).is_zero()) rep.violations++;
            return;
        }
    });
}

RelationFuzzReport fuzz_relation_C(int samples, long long m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return fuzz(samples, [&](RelationFuzzReport& rep) {
        for (;;) {
            IVec v1 = random_vec(rng, m), v2 = random_vec(rng, m), v3 = random_vec(rng, m);
            IVec v4 = -((v1 + v2) + v3);
            if (v1.is_zero() || v2.is_zero() || v3.is_zero() || v4.is_zero()) continue;
            if (std::llabs(v4.x) > m || std::llabs(v4.y) > m) continue;
            auto rel = relation_C(v1, v2, v3, v4);
            if (!rel) {
                rep.skipped_degenerate++;
            } else if (!rel->is_zero()) {
                rep.violations++;
            }
            return;
        }
    });
}

mpz_class kontsevich_N(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    auto binom = [](long long n, long long k) -> mpz_class {
        if (k < 0 || k > n) return 0;
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    };
    std::vector<mpz_class> N(static_cast<size_t>(d) + 1);
    if (d >= 1) N[1] = 1;
    for (int k = 2; k <= d; ++k) {
        mpz_class acc = 0;
        for (int da = 1; da < k; ++da) {
            int db = k - da;
            mpz_class term = N[da] * N[db];
            term *= static_cast<long>(da) * da * db;
            mpz_class inner = mpz_class(db) * binom(3 * k - 4, 3 * da - 2) -
                              mpz_class(da) * binom(3 * k - 4, 3 * da - 1);
            acc += term * inner;
        }
        N[k] = acc;
    }
    return N[d];
}

long long welschinger_total(const Degree& deg, int r, const EnumerationReport& rep) {
    (void)deg;
    (void)r;
    if (rep.degenerate) throw std::runtime_error("Welschinger total over a degenerate enumeration");
    Rat total(0);
    for (const auto& ex : rep.curves) {
        int w = real_mult(ex.curve);
        if (w == 0) continue;
        Rat term(static_cast<long>(w), static_cast<unsigned long>(ex.aut_order));
        term.canonicalize();
        total += term;
    }
    if (total.get_den() != 1) throw std::logic_error("Welschinger total is not an integer");
    return static_cast<long long>(total.get_num().get_si());
}

long long welschinger_total_seeded(const Degree& deg, int r, std::uint64_t seed) {
    auto [cfg, rep] = random_config_enumerated(deg, r, 0, seed);
    (void)cfg;
    return welschinger_total(deg, r, rep);
}

InvarianceReport invariance_harness(const Degree& deg, int r, int s,
                                    const std::vector<std::uint64_t>& seeds) {
    if (seeds.size() < 2) throw std::invalid_argument("invariance harness needs at least two seeds");
    InvarianceReport out;
    for (std::uint64_t seed : seeds) {
        InvariantResult res = invariant_rB_seeded(deg, r, s, seed);
        out.per_seed.emplace_back(seed, res.value);
    }
    out.value = out.per_seed.front().second;
    out.ok = true;
    for (const auto& [seed, val] : out.per_seed) {
        if (!(val == out.value)) {
            out.ok = false;
            std::ostringstream os;
            os << "seed " << out.per_seed.front().first << " gives " << out.value.str()
               << " but seed " << seed << " gives " << val.str();
            out.mismatch = os.str();
            break;
        }
    }
    return out;
}

} // namespace trop
