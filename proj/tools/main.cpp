#include "trop/json_io.hpp"
#include "trop/verification.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace trop;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kEngineVersion = "0.1.0";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct DegreeArgs {
    int p2 = 0;
    std::string file;
    std::vector<int> fixed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--p2-degree", p2, "projective plane degree d: d x {(-1,0),(0,-1),(1,1)}");
        cmd->add_option("--degree-file", file, "degree JSON file: {\"ends\": [[x,y],...], \"fixed\": [...]}");
        cmd->add_option("--fixed", fixed, "labels of fixed ends (1-based)")->delimiter(',');
    }
    Degree resolve(RunManifest& mf) const {
        Degree deg;
        if (!file.empty()) {
            std::string bytes = slurp(file);
            mf.input_hashes["degree_file"] = fnv1a_hex(bytes);
            deg = degree_from_json(json::parse(bytes));
        } else if (p2 >= 1) {
            deg = Degree::p2(p2);
        } else {
            throw std::invalid_argument("need --p2-degree or --degree-file");
        }
        for (int f : fixed) deg.fixed.insert(f);
        deg.validate();
        return deg;
    }
};

void write_result(const std::string& out, const RunManifest& mf, const json& result, bool to_stdout) {
    json doc{{"manifest", to_json(mf)}, {"result", result}};
    std::string text = doc.dump(2) + "\n";
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << text;
    }
    if (to_stdout || out.empty()) std::cout << text;
}

Config config_for_run(const Degree& deg, int r, int s, std::uint64_t seed, const std::string& cfg_file,
                      RunManifest& mf, EnumerationReport& rep, int threads) {
    if (!cfg_file.empty()) {
        std::string bytes = slurp(cfg_file);
        mf.input_hashes["config_file"] = fnv1a_hex(bytes);
        Config cfg = config_from_json(json::parse(bytes));
        rep = enumerate_through(deg, r, s, cfg, threads);
        if (rep.degenerate)
            throw std::runtime_error("configuration is degenerate: " + rep.degenerate_reason);
        return cfg;
    }
    auto [cfg, r2] = random_config_enumerated(deg, r, s, seed, 100000, 32, threads);
    rep = std::move(r2);
    return cfg;
}

int cmd_compute(const DegreeArgs& dargs, int r, int s, std::uint64_t seed, const std::string& invariant,
                const std::string& cfg_file, const std::string& out, bool json_only, int threads) {
    RunManifest mf;
    mf.command = "compute";
    mf.engine_version = kEngineVersion;
    mf.seeds = {seed};
    mf.flags = {{"invariant", invariant}, {"real", std::to_string(r)}, {"complex", std::to_string(s)}};
    auto t0 = Clock::now();

    Degree deg = dargs.resolve(mf);
    EnumerationReport rep;
    Config cfg = config_for_run(deg, r, s, seed, cfg_file, mf, rep, threads);
    (void)cfg;

    InvariantResult res;
    if (invariant == "rB") res = invariant_rB(deg, r, s, rep);
    else if (invariant == "desc") res = invariant_desc(deg, r, s, rep);
    else if (invariant == "desc-star") res = invariant_desc_star(deg, r, s, rep);
    else throw std::invalid_argument("--invariant must be rB, desc or desc-star");
    res.seeds = {seed};

    mf.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    if (!json_only)
        std::cout << "N[" << res.name << "](|Delta|=" << deg.size() << ", r=" << r << ", s=" << s
                  << ") = " << res.value.str() << "\n";
    write_result(out, mf, to_json(res), json_only);
    return 0;
}

int cmd_enumerate(const DegreeArgs& dargs, int r, int s, std::uint64_t seed,
                  const std::string& cfg_file, bool list_curves, const std::string& out,
                  bool json_only, int threads) {
    RunManifest mf;
    mf.command = "enumerate";
    mf.engine_version = kEngineVersion;
    mf.seeds = {seed};
    mf.flags = {{"real", std::to_string(r)}, {"complex", std::to_string(s)}};
    auto t0 = Clock::now();

    Degree deg = dargs.resolve(mf);
    EnumerationReport rep;
    Config cfg = config_for_run(deg, r, s, seed, cfg_file, mf, rep, threads);

    json curves = json::array();
    for (const auto& ex : rep.curves) {
        json c = to_json(ex.curve);
        c["aut_order"] = ex.aut_order;
        c["refined_multiplicity"] = to_json(refined_mult_y(ex.curve.comb, deg));
        curves.push_back(std::move(c));
    }
    json rejected = json::object();
    for (const auto& [k, v] : rep.rejected_types) rejected[k] = v;
    json result{{"config", to_json(cfg)},
                {"curve_count", rep.curves.size()},
                {"rejected", rejected}};
    if (list_curves) result["curves"] = curves;

    mf.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    if (!json_only) {
        std::cout << rep.curves.size() << " curve" << (rep.curves.size() == 1 ? "" : "s")
                  << " through the configuration\n";
        if (list_curves)
            for (const auto& ex : rep.curves)
                std::cout << "  " << ex.curve.comb.canonical_key()
                          << "  m = " << refined_mult_y(ex.curve.comb, deg).str() << "\n";
    }
    write_result(out, mf, result, json_only);
    return 0;
}

int cmd_verify_relations(int samples, long long max_entry, std::uint64_t seed, const std::string& out,
                         bool json_only) {
    RunManifest mf;
    mf.command = "verify relations";
    mf.engine_version = kEngineVersion;
    mf.seeds = {seed};
    mf.flags = {{"samples", std::to_string(samples)}, {"max_entry", std::to_string(max_entry)}};
    auto t0 = Clock::now();

    auto a = fuzz_relation_A(samples, max_entry, seed);
    auto b = fuzz_relation_B(samples, max_entry, seed + 1);
    auto c = fuzz_relation_C(samples, max_entry, seed + 2);
    int violations = a.violations + b.violations + c.violations;

    mf.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    json result{{"samples_per_relation", samples},
                {"violations", violations},
                {"skipped_degenerate", c.skipped_degenerate}};
    if (!json_only)
        std::cout << 3 * samples << " samples, " << violations << " violations, "
                  << c.skipped_degenerate << " skipped-degenerate\n";
    write_result(out, mf, result, json_only);
    return violations == 0 ? 0 : 1;
}

int cmd_verify_invariance(const DegreeArgs& dargs, int r, int s, std::vector<std::uint64_t> seeds,
                          const std::string& out, bool json_only) {
    RunManifest mf;
    mf.command = "verify invariance";
    mf.engine_version = kEngineVersion;
    mf.seeds = seeds;
    mf.flags = {{"real", std::to_string(r)}, {"complex", std::to_string(s)}};
    auto t0 = Clock::now();

    Degree deg = dargs.resolve(mf);
    auto rep = invariance_harness(deg, r, s, seeds);

    mf.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    json per_seed = json::array();
    for (const auto& [sv, val] : rep.per_seed)
        per_seed.push_back(json{{"seed", sv}, {"value", to_json(val)}});
    json result{{"ok", rep.ok}, {"value", to_json(rep.value)}, {"per_seed", per_seed}};
    if (!rep.ok) result["mismatch"] = rep.mismatch;
    if (!json_only) {
        if (rep.ok)
            std::cout << "invariant across " << seeds.size() << " seeds: " << rep.value.str() << "\n";
        else
            std::cout << "INVARIANCE VIOLATED: " << rep.mismatch << "\n";
    }
    write_result(out, mf, result, json_only);
    return rep.ok ? 0 : 1;
}

int cmd_verify_properties(const DegreeArgs& dargs, int r, int s, std::uint64_t seed,
                          const std::string& out, bool json_only) {
    RunManifest mf;
    mf.command = "verify properties";
    mf.engine_version = kEngineVersion;
    mf.seeds = {seed};
    mf.flags = {{"real", std::to_string(r)}, {"complex", std::to_string(s)}};
    auto t0 = Clock::now();

    Degree deg = dargs.resolve(mf);
    auto [cfg, rep] = random_config_enumerated(deg, r, s, seed);
    (void)cfg;

    int failures = 0;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            ++failures;
            std::cerr << "property violated: " << what << "\n";
        }
    };
    for (const auto& ex : rep.curves) {
        const CombType& comb = ex.curve.comb;
        auto cm = curve_multiplicities(ex.curve, deg);
        QFraction m = refined_mult(comb, deg);
        auto red = m.reduce();
        expect(red.has_value(), "multiplicity reduces to a Laurent polynomial");
        if (red) expect(is_symmetric(*red), "multiplicity is symmetric");
        Rat w(1);
        for (const auto& e : comb.ends)
            if (!deg.is_fixed(e.label)) w *= rat_of(weight_of(e.dir));
        auto cleared = (m * w).reduce();
        expect(cleared && cleared->all_coeffs_integer(), "weight-cleared multiplicity is integral");
        expect(cm.flags.is_refined_broccoli == cm.flags.is_descendant,
               "broccoli/descendant bijection");
        bool old_flag = cm.flags.is_old_broccoli;
        expect(old_flag == (cm.broccoli_index == 0), "old <=> i_B = 0");
        expect(old_flag == (eval_y(cm.refined, -1) != 0), "old <=> m(-1) != 0");
        if (!old_flag && cleared) {
            expect(cm.broccoli_index > 0 && cm.broccoli_index % 2 == 0, "i_B even and positive");
            expect(plus_divisibility_order(*cleared) == cm.broccoli_index,
                   "plus-bracket order equals i_B");
        }
    }

    mf.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    json result{{"curves", rep.curves.size()}, {"failures", failures}};
    if (!json_only)
        std::cout << rep.curves.size() << " curves checked, " << failures << " property violations\n";
    write_result(out, mf, result, json_only);
    return failures == 0 ? 0 : 1;
}

int cmd_oracle_kontsevich(int max_degree, const std::string& out, bool json_only) {
    RunManifest mf;
    mf.command = "oracle kontsevich";
    mf.engine_version = kEngineVersion;
    mf.flags = {{"max_degree", std::to_string(max_degree)}};
    json values = json::array();
    std::ostringstream line;
    for (int d = 1; d <= max_degree; ++d) {
        mpz_class n = kontsevich_N(d);
        values.push_back(n.get_str());
        if (d > 1) line << ",";
        line << n.get_str();
    }
    if (!json_only) std::cout << line.str() << "\n";
    write_result(out, mf, json{{"values", values}}, json_only);
    return 0;
}

int cmd_oracle_welschinger(const DegreeArgs& dargs, int r, std::uint64_t seed, const std::string& out,
                           bool json_only) {
    RunManifest mf;
    mf.command = "oracle welschinger";
    mf.engine_version = kEngineVersion;
    mf.seeds = {seed};
    Degree deg = dargs.resolve(mf);
    if (r == 0) r = deg.size() - 1 - static_cast<int>(deg.fixed.size());
    long long w = welschinger_total_seeded(deg, r, seed);
    if (!json_only) std::cout << w << "\n";
    write_result(out, mf, json{{"welschinger", w}, {"r", r}}, json_only);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact enumeration of rational plane tropical curves and their refined invariants"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    std::string out;
    int threads = 1;
    bool json_only = false;
    app.add_option("--seed", seed, "PRNG seed for generated configurations")->capture_default_str();
    app.add_option("--out", out, "write the result JSON to this file");
    app.add_option("--threads", threads, "worker threads for enumeration")->capture_default_str();
    app.add_flag("--json", json_only, "print only the result JSON");

    auto* compute = app.add_subcommand("compute", "compute a refined invariant");
    compute->fallthrough();
    DegreeArgs cdeg;
    cdeg.attach(compute);
    int c_r = 0, c_s = 0;
    std::string c_inv = "rB", c_cfg;
    compute->add_option("--real", c_r, "number of real point conditions");
    compute->add_option("--complex", c_s, "number of complex point conditions");
    compute->add_option("--invariant", c_inv, "rB | desc | desc-star")->capture_default_str();
    compute->add_option("--config", c_cfg, "explicit configuration JSON file");

    auto* enumerate = app.add_subcommand("enumerate", "enumerate curves through a configuration");
    enumerate->fallthrough();
    DegreeArgs edeg;
    edeg.attach(enumerate);
    int e_r = 0, e_s = 0;
    std::string e_cfg;
    bool e_list = false;
    enumerate->add_option("--real", e_r, "number of real point conditions");
    enumerate->add_option("--complex", e_s, "number of complex point conditions");
    enumerate->add_option("--config", e_cfg, "explicit configuration JSON file");
    enumerate->add_flag("--list-curves", e_list, "include every curve in the output");

    auto* verify = app.add_subcommand("verify", "check the engine's contracts");
    verify->fallthrough();
    verify->require_subcommand(1);
    auto* vrel = verify->add_subcommand("relations", "wall-crossing identities on random stars");
    vrel->fallthrough();
    int v_samples = 1000;
    long long v_max = 10;
    vrel->add_option("--samples", v_samples, "samples per relation")->capture_default_str();
    vrel->add_option("--max-entry", v_max, "entry bound for the random vectors")->capture_default_str();

    auto* vinv = verify->add_subcommand("invariance", "equality of the invariant across seeds");
    vinv->fallthrough();
    DegreeArgs vdeg;
    vdeg.attach(vinv);
    int vi_r = 0, vi_s = 0;
    std::vector<std::uint64_t> vi_seeds;
    vinv->add_option("--real,--r", vi_r, "number of real point conditions");
    vinv->add_option("--complex,--s", vi_s, "number of complex point conditions");
    vinv->add_option("--seeds", vi_seeds, "two or more seeds")->delimiter(',');

    auto* vprop = verify->add_subcommand("properties", "per-curve multiplicity properties");
    vprop->fallthrough();
    DegreeArgs pdeg;
    pdeg.attach(vprop);
    int vp_r = 0, vp_s = 0;
    vprop->add_option("--real", vp_r, "number of real point conditions");
    vprop->add_option("--complex", vp_s, "number of complex point conditions");

    auto* oracle = app.add_subcommand("oracle", "classical reference values");
    oracle->fallthrough();
    oracle->require_subcommand(1);
    auto* okont = oracle->add_subcommand("kontsevich", "rational plane curve counts");
    okont->fallthrough();
    int o_max = 5;
    okont->add_option("--max-degree", o_max, "largest degree")->capture_default_str();
    auto* owel = oracle->add_subcommand("welschinger", "signed real count via enumeration");
    owel->fallthrough();
    DegreeArgs wdeg;
    wdeg.attach(owel);
    int w_r = 0;
    owel->add_option("--real", w_r, "number of real points (defaults to |Delta|-1-|F|)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) return cmd_compute(cdeg, c_r, c_s, seed, c_inv, c_cfg, out, json_only, threads);
        if (*enumerate)
            return cmd_enumerate(edeg, e_r, e_s, seed, e_cfg, e_list, out, json_only, threads);
        if (*verify) {
            if (*vrel) return cmd_verify_relations(v_samples, v_max, seed, out, json_only);
            if (*vinv) {
                if (vi_seeds.size() < 2) throw std::invalid_argument("--seeds needs at least two");
                return cmd_verify_invariance(vdeg, vi_r, vi_s, vi_seeds, out, json_only);
            }
            if (*vprop) return cmd_verify_properties(pdeg, vp_r, vp_s, seed, out, json_only);
        }
        if (*oracle) {
            if (*okont) return cmd_oracle_kontsevich(o_max, out, json_only);
            if (*owel) return cmd_oracle_welschinger(wdeg, w_r, seed, out, json_only);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
