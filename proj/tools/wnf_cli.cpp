// Command-line entry point: exact local Whittaker newform computations and
// the valuation bound verification sweeps.  All rational quantities are
// printed as "num/den" strings; output is deterministic for a fixed
// configuration (the timing field of verify-bounds can be suppressed with
// --no-timing).

#include <CLI11.hpp>
#include <json.hpp>

#include "wnf/bounds.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace wnf;
using nlohmann::json;

namespace {

constexpr int EXIT_MATH_FAILURE = 1;
constexpr int EXIT_UNKNOWN_COMMAND = 2;
constexpr int EXIT_INVALID_CONFIG = 3;
constexpr int EXIT_CAP_EXCEEDED = 4;

RepType parse_type(const std::string& s) {
    if (s == "1") return RepType::Supercuspidal;
    if (s == "2a") return RepType::SteinbergTwist;
    if (s == "3a") return RepType::PrincipalSeries3a;
    if (s == "3b") return RepType::PrincipalSeries3b;
    throw std::invalid_argument("unknown representation type: " + s);
}

RepDescriptor select_rep(long p, int f, const std::string& type, int cond,
                         int rep_index, long cap) {
    auto F = LocalField::get(p, f);
    auto family = RepDescriptor::enumerate(F, cond, parse_type(type), cap);
    if (rep_index < 0 || rep_index >= (int)family.size())
        throw std::invalid_argument("rep-index out of range (family has " +
                                    std::to_string(family.size()) + " members)");
    return family[rep_index];
}

json laurent_json(const CycloLaurent& z) {
    json terms = json::array();
    for (auto& [k, c] : z.terms()) {
        json t;
        t["xpow"] = k;
        t["coeff"] = json::parse(c.json());
        terms.push_back(t);
    }
    return terms;
}

json valuation_json(const CycloLaurent& z, long p, const Rat& nu, int iso) {
    json out;
    auto lv = val_p_laurent(z, p, nu, iso);
    out["valuation"] = lv.value.str();
    out["certainty"] = lv.certainty == ValCertainty::exact ? "exact" : "lower_bound";
    return out;
}

PElt parse_pelt(const std::shared_ptr<const LocalField>& F, const std::string& tok,
                int level) {
    if (tok == "z") return PElt::zero_elt();
    auto colon = tok.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("matrix entry must be 'val:unit' or 'z'");
    long val = std::stol(tok.substr(0, colon));
    long unit = std::stol(tok.substr(colon + 1));
    return PElt{false, val, F->unit_from_int(unit, level)};
}

struct Cfg {
    long p = 3;
    int f = 1;
    int level = 2;
    int cond = 2;
    std::string type = "2a";
    int rep_index = 0;
    long char_cap = 100000;
    int iso = 0;
};

void apply_config_file(const std::string& path, Cfg& c, SweepConfig& sc,
                       std::string& mode_str, std::string& nu_str) {
    std::ifstream in(path);
    if (!in.good()) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    if (j.contains("p")) c.p = j["p"].get<long>();
    if (j.contains("f")) c.f = j["f"].get<int>();
    if (j.contains("level")) c.level = j["level"].get<int>();
    if (j.contains("cond")) c.cond = j["cond"].get<int>();
    if (j.contains("type")) c.type = j["type"].get<std::string>();
    if (j.contains("rep_index")) c.rep_index = j["rep_index"].get<int>();
    if (j.contains("char_cap")) c.char_cap = j["char_cap"].get<long>();
    if (j.contains("iso")) c.iso = j["iso"].get<int>();
    if (j.contains("mode")) mode_str = j["mode"].get<std::string>();
    if (j.contains("nu")) nu_str = j["nu"].get<std::string>();
    if (j.contains("spec_r")) sc.spec_r = j["spec_r"].get<long>();
    if (j.contains("t_margin")) sc.t_margin = j["t_margin"].get<long>();
    if (j.contains("t_max")) sc.t_max = j["t_max"].get<long>();
    if (j.contains("reps_per_family")) sc.reps_per_family = j["reps_per_family"].get<int>();
    if (j.contains("jobs")) sc.jobs = j["jobs"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local Whittaker newform values and valuation bounds"};
    app.require_subcommand(0, 1);

    Cfg cfg;
    SweepConfig sweep;
    std::string config_path;

    auto* cmd_chars = app.add_subcommand("enumerate-chars",
                                         "list the characters of conductor <= level");
    cmd_chars->add_option("--p", cfg.p);
    cmd_chars->add_option("--f", cfg.f);
    cmd_chars->add_option("--level", cfg.level);
    cmd_chars->add_option("--char-cap", cfg.char_cap);

    long valx = -1;
    int char_index = 0;
    auto* cmd_gauss = app.add_subcommand("gauss", "brute-force Gauss sum");
    cmd_gauss->add_option("--p", cfg.p);
    cmd_gauss->add_option("--f", cfg.f);
    cmd_gauss->add_option("--level", cfg.level);
    cmd_gauss->add_option("--char-index", char_index);
    cmd_gauss->add_option("--valx", valx);

    auto* cmd_eps = app.add_subcommand("eps", "GL(1) epsilon factor");
    cmd_eps->add_option("--p", cfg.p);
    cmd_eps->add_option("--f", cfg.f);
    cmd_eps->add_option("--level", cfg.level);
    cmd_eps->add_option("--char-index", char_index);
    cmd_eps->add_option("--iso", cfg.iso);

    auto* cmd_reps = app.add_subcommand("list-reps", "representation descriptors");
    cmd_reps->add_option("--p", cfg.p);
    cmd_reps->add_option("--f", cfg.f);
    cmd_reps->add_option("--conductor", cfg.cond);
    cmd_reps->add_option("--type", cfg.type);
    cmd_reps->add_option("--char-cap", cfg.char_cap);

    long arg_t = -2;
    int arg_l = 1, chi_index = 0;
    auto* cmd_ctl = app.add_subcommand("ctl", "Fourier coefficient c_{t,l}(chi)");
    cmd_ctl->add_option("--p", cfg.p);
    cmd_ctl->add_option("--f", cfg.f);
    cmd_ctl->add_option("--type", cfg.type);
    cmd_ctl->add_option("--cond", cfg.cond);
    cmd_ctl->add_option("--rep-index", cfg.rep_index);
    cmd_ctl->add_option("--chi-index", chi_index);
    cmd_ctl->add_option("--t", arg_t);
    cmd_ctl->add_option("--l", arg_l);

    long arg_v = 1, arg_a = 2, arg_r = 1;
    auto* cmd_wh = app.add_subcommand("whittaker", "Whittaker value at a cell");
    auto* cmd_al = app.add_subcommand("atkin-lehner", "check the functional relation");
    auto* cmd_gal = app.add_subcommand("galois-check", "check Galois equivariance");
    for (auto* c : {cmd_wh, cmd_al, cmd_gal}) {
        c->add_option("--p", cfg.p);
        c->add_option("--f", cfg.f);
        c->add_option("--type", cfg.type);
        c->add_option("--cond", cfg.cond);
        c->add_option("--rep-index", cfg.rep_index);
        c->add_option("--t", arg_t);
        c->add_option("--l", arg_l);
        c->add_option("--v", arg_v);
    }
    cmd_gal->add_option("--a", arg_a);
    cmd_gal->add_option("--r", arg_r);

    std::string ma = "z", mb = "0:1", mc = "0:1", md = "z";
    int arg_n = 2, mat_level = 12;
    auto* cmd_dec = app.add_subcommand("decompose", "cell decomposition of a matrix");
    cmd_dec->add_option("--p", cfg.p);
    cmd_dec->add_option("--f", cfg.f);
    cmd_dec->add_option("--n", arg_n);
    cmd_dec->add_option("--level", mat_level);
    cmd_dec->add_option("--a", ma);
    cmd_dec->add_option("--b", mb);
    cmd_dec->add_option("--c", mc);
    cmd_dec->add_option("--d", md);

    std::string mode_str = "exact", nu_str = "0", out_path, out_format = "json",
                ctype = "all";
    bool no_timing = false, with_rows = false;
    auto* cmd_vb = app.add_subcommand("verify-bounds", "bound verification sweep");
    cmd_vb->add_option("--p", cfg.p);
    cmd_vb->add_option("--f", cfg.f);
    cmd_vb->add_option("--ctype", ctype);
    cmd_vb->add_option("--cond", cfg.cond);
    cmd_vb->add_option("--mode", mode_str);
    cmd_vb->add_option("--nu", nu_str);
    cmd_vb->add_option("--spec-r", sweep.spec_r);
    cmd_vb->add_option("--t-margin", sweep.t_margin);
    cmd_vb->add_option("--t-max", sweep.t_max);
    cmd_vb->add_option("--reps-per-family", sweep.reps_per_family);
    cmd_vb->add_option("--iso", cfg.iso);
    cmd_vb->add_option("--jobs", sweep.jobs);
    cmd_vb->add_option("--out", out_path);
    cmd_vb->add_option("--format", out_format);
    cmd_vb->add_option("--config", config_path);
    cmd_vb->add_flag("--no-timing", no_timing);
    cmd_vb->add_flag("--rows", with_rows);

    long gN = 9, gL = 3, gM = 3, gk = 4;
    auto* cmd_gb = app.add_subcommand("global-bound", "cusp valuation assembly bound");
    cmd_gb->add_option("--k", gk);
    cmd_gb->add_option("--N", gN);
    cmd_gb->add_option("--L", gL);
    cmd_gb->add_option("--M", gM);
    cmd_gb->add_option("--p", cfg.p);
    cmd_gb->add_option("--f", cfg.f);
    cmd_gb->add_option("--type", cfg.type);
    cmd_gb->add_option("--cond", cfg.cond);
    cmd_gb->add_option("--rep-index", cfg.rep_index);
    cmd_gb->add_option("--nu", nu_str);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int ret = app.exit(e);
        return ret == 0 ? 0 : EXIT_UNKNOWN_COMMAND;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help() << std::endl;
        return EXIT_UNKNOWN_COMMAND;
    }

    try {
        if (!config_path.empty())
            apply_config_file(config_path, cfg, sweep, mode_str, nu_str);
        // flags override file values
        try {
            app.clear();
            app.parse(argc, argv);
        } catch (const CLI::ParseError&) {
        }

        if (cmd_chars->parsed()) {
            auto F = LocalField::get(cfg.p, cfg.f);
            json out = json::array();
            for (auto& chi : MultChar::enumerate(F, cfg.level, cfg.char_cap)) {
                json c;
                c["conductor"] = chi.conductor();
                c["order"] = chi.value_order();
                c["exponents"] = chi.exps();
                out.push_back(c);
            }
            std::cout << out.dump() << std::endl;
            return 0;
        }

        if (cmd_gauss->parsed() || cmd_eps->parsed()) {
            auto F = LocalField::get(cfg.p, cfg.f);
            auto chars = MultChar::enumerate(F, cfg.level, cfg.char_cap);
            if (char_index < 0 || char_index >= (int)chars.size())
                throw std::invalid_argument("char-index out of range");
            const MultChar& chi = chars[char_index];
            json out;
            if (cmd_gauss->parsed()) {
                auto x = frac_one(F, valx, (int)std::max<long>(1, -valx));
                auto G = gauss_bruteforce(chi, x, cfg.char_cap);
                out["value"] = json::parse(G.json());
                if (G.is_rational()) out["rational"] = rat_str(G.rational_value());
                out["valuation"] = val_p_cyclo(G, cfg.p, cfg.iso).str();
            } else {
                if (chi.conductor() < 1)
                    throw std::invalid_argument("eps: character must be ramified");
                const auto& e = epsilon_gl1(chi, cfg.iso);
                out["value"] = json::parse(e.value.json());
                out["valuation"] = e.valuation.str();
                if (e.s_invariant) out["s"] = *e.s_invariant;
            }
            std::cout << out.dump() << std::endl;
            return 0;
        }

        if (cmd_reps->parsed()) {
            auto F = LocalField::get(cfg.p, cfg.f);
            json out = json::array();
            for (auto& pi :
                 RepDescriptor::enumerate(F, cfg.cond, parse_type(cfg.type), cfg.char_cap))
                out.push_back(json::parse(pi.json()));
            std::cout << out.dump() << std::endl;
            return 0;
        }

        if (cmd_ctl->parsed()) {
            auto pi = select_rep(cfg.p, cfg.f, cfg.type, cfg.cond, cfg.rep_index,
                                 cfg.char_cap);
            auto chars = MultChar::enumerate(pi.field(), std::max(arg_l, 1));
            if (chi_index < 0 || chi_index >= (int)chars.size())
                throw std::invalid_argument("chi-index out of range");
            auto c = c_tl(pi, chars[chi_index], arg_t, arg_l);
            json out;
            out["laurent"] = laurent_json(c);
            out.update(valuation_json(c, cfg.p, Rat(0), cfg.iso));
            std::cout << out.dump() << std::endl;
            return 0;
        }

        if (cmd_wh->parsed()) {
            auto pi = select_rep(cfg.p, cfg.f, cfg.type, cfg.cond, cfg.rep_index,
                                 cfg.char_cap);
            auto F = pi.field();
            auto v = F->unit_from_int(arg_v, pi.conductor() + 10);
            auto W = whittaker_value(pi, make_cell(pi, arg_t, arg_l, v));
            json out;
            out["laurent"] = laurent_json(W);
            out.update(valuation_json(W, cfg.p, Rat(0), cfg.iso));
            std::cout << out.dump() << std::endl;
            return 0;
        }

        if (cmd_al->parsed()) {
            auto pi = select_rep(cfg.p, cfg.f, cfg.type, cfg.cond, cfg.rep_index,
                                 cfg.char_cap);
            auto F = pi.field();
            auto v = F->unit_from_int(arg_v, pi.conductor() + 12);
            auto rep = atkin_lehner_check(pi, make_cell(pi, arg_t, arg_l, v));
            json out;
            out["ok"] = rep.ok;
            out["exact"] = rep.exact;
            std::cout << out.dump() << std::endl;
            return rep.ok ? 0 : EXIT_MATH_FAILURE;
        }

        if (cmd_gal->parsed()) {
            auto pi = select_rep(cfg.p, cfg.f, cfg.type, cfg.cond, cfg.rep_index,
                                 cfg.char_cap);
            auto F = pi.field();
            auto v = F->unit_from_int(arg_v, pi.conductor() + 12);
            bool ok = galois_act_check(pi, make_cell(pi, arg_t, arg_l, v), arg_a, arg_r);
            json out;
            out["ok"] = ok;
            std::cout << out.dump() << std::endl;
            return ok ? 0 : EXIT_MATH_FAILURE;
        }

        if (cmd_dec->parsed()) {
            auto F = LocalField::get(cfg.p, cfg.f);
            Mat2 g{parse_pelt(F, ma, mat_level), parse_pelt(F, mb, mat_level),
                   parse_pelt(F, mc, mat_level), parse_pelt(F, md, mat_level)};
            auto d = decompose_gl2(F, g, arg_n);
            bool ok = in_cell(F, g, d, arg_n);
            json out;
            out["t"] = d.t;
            out["l"] = d.l;
            out["v_class"] = d.v_class.c[0].convert_to<long>();
            out["witness_ok"] = ok;
            std::cout << out.dump() << std::endl;
            return ok ? 0 : EXIT_MATH_FAILURE;
        }

        if (cmd_vb->parsed()) {
            sweep.p = cfg.p;
            sweep.f = cfg.f;
            sweep.cond_min = sweep.cond_max = cfg.cond;
            if (mode_str != "formal" && mode_str != "exact")
                throw std::invalid_argument("mode must be exact or formal");
            sweep.mode = mode_str == "formal" ? SweepMode::formal : SweepMode::exact;
            sweep.nu = rat_parse(nu_str);
            sweep.iso = cfg.iso;
            if (ctype != "all") sweep.types = {parse_type(ctype)};
            auto t0 = std::chrono::steady_clock::now();
            auto report = verify_bounds(sweep);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            std::string payload;
            if (out_format == "csv") {
                payload = report.csv();
            } else if (out_format == "json") {
                json j = json::parse(report.json(with_rows));
                if (!no_timing) j["elapsed_ms"] = ms;
                payload = j.dump();
            } else {
                throw std::invalid_argument("format must be csv or json");
            }
            if (!out_path.empty()) {
                std::ofstream of(out_path);
                of << payload << "\n";
            } else {
                std::cout << payload << std::endl;
            }
            return report.violations == 0 ? 0 : EXIT_MATH_FAILURE;
        }

        if (cmd_gb->parsed()) {
            auto pi = select_rep(cfg.p, cfg.f, cfg.type, cfg.cond, cfg.rep_index,
                                 cfg.char_cap);
            auto gb = global_cusp_valuation_bound(gk, gN, gL, gM, cfg.p, pi,
                                                  rat_parse(nu_str), cfg.iso);
            json out;
            out["applicable"] = gb.applicable;
            if (gb.applicable) {
                out["value"] = rat_str(gb.value);
                out["minimizer_u"] = gb.minimizer_u;
                out["delta_val"] = rat_str(gb.delta_val);
            }
            std::cout << out.dump() << std::endl;
            return 0;
        }
    } catch (const std::length_error& e) {
        std::cerr << "cap exceeded: " << e.what() << std::endl;
        return EXIT_CAP_EXCEEDED;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << std::endl;
        return EXIT_INVALID_CONFIG;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << std::endl;
        return EXIT_INVALID_CONFIG;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return EXIT_MATH_FAILURE;
    }

    std::cerr << app.help() << std::endl;
    return EXIT_UNKNOWN_COMMAND;
}
