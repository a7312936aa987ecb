// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmeas/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmeas/json_io.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"

namespace qmeas {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::undecided: return 2;
    case ErrorKind::io: return 3;
    default: return 1;
    }
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

using io::json;
using io::format_double;

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
};

// State shared by one subcommand invocation: parameters for the manifest,
// input files read, and where results go.
struct Run {
    std::string subcommand;
    Common common;
    json params = json::object();
    json inputs = json::array();
    std::ostream *out = nullptr;
    bool csv() const { return common.format == "csv"; }

    json load(const std::string &path) {
        const std::string bytes = slurp(path);
        inputs.push_back(json{{"path", path}, {"fnv1a64", hex64(fnv1a64(bytes))}});
        try {
            return json::parse(bytes);
        } catch (const nlohmann::json::exception &e) {
            throw Error(ErrorKind::parse, "'" + path + "': " + e.what());
        }
    }

    void emit(const std::string &body) const {
        if (common.out.empty()) {
            *out << body;
            return;
        }
        write_file(common.out, body);
        json manifest{{"subcommand", subcommand},
                      {"parameters", params},
                      {"seed", common.seed},
                      {"format", common.format},
                      {"tool_version", std::string(tool_version)},
                      {"inputs", inputs},
                      {"outputs", json::array({json{{"path", common.out},
                                                    {"fnv1a64", hex64(fnv1a64(body))}}})}};
        write_file(common.out + ".manifest.json", manifest.dump(2) + "\n");
    }

    static void write_file(const std::string &path, const std::string &body) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::io, "cannot write '" + path + "'");
        f << body;
        f.close();
        if (!f) throw Error(ErrorKind::io, "failed writing '" + path + "'");
    }
};

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::string csv_join(std::initializer_list<std::string> cells) {
    std::string line;
    bool first = true;
    for (const auto &c : cells) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    return line + "\n";
}

std::string csv_povm(const Povm &p) {
    std::string s = "label,row,col,re,im\n";
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto &m = p[k].matrix();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                s += csv_join({p.labels()[k], std::to_string(i), std::to_string(j),
                               format_double(m(i, j).real()), format_double(m(i, j).imag())});
    }
    return s;
}

std::string csv_report(const CompatReport &r) {
    return "verdict,witness_margin,iterations,marginal_residual,tolerance\n" +
           csv_join({std::string(to_string(r.verdict)), format_double(r.witness_margin),
                     std::to_string(r.iterations), format_double(r.marginal_residual),
                     format_double(r.tolerance)});
}

int verdict_exit(const CompatReport &r) { return r.verdict == Verdict::undecided ? 2 : 0; }

DensityOperator named_qubit_state(const std::string &name) {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::vector<cplx> ket;
    if (name == "0") ket = {1.0, 0.0};
    else if (name == "1") ket = {0.0, 1.0};
    else if (name == "+") ket = {h, h};
    else if (name == "-") ket = {h, -h};
    else if (name == "+i") ket = {h, h * i};
    else if (name == "-i") ket = {h, -h * i};
    else throw Error(ErrorKind::validation, "unknown qubit state '" + name + "'");
    return DensityOperator::pure(ket);
}

void add_common(CLI::App *sub, Common &c, const std::string &default_format) {
    sub->add_option("--seed", c.seed, "Random seed (default 0)");
    sub->add_option("--out", c.out, "Output file; a <file>.manifest.json is written next to it");
    sub->add_option("--format", c.format, "Output format, json or csv (default " + default_format + ")")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->parse_complete_callback([&c, default_format] {
        if (c.format.empty()) c.format = default_format;
    });
}

} // namespace

int cli_dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"qmeas: quantum measurement toolkit"};
    app.name("qmeas");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    Run run;
    run.out = &out;
    std::function<int()> action;

    // eta-sweep
    std::vector<double> sw_kappa, sw_delta;
    int sw_points = 4097;
    auto *sweep = app.add_subcommand("eta-sweep", "Pointer-model sharpness: numeric vs erf law");
    sweep->add_option("--kappa", sw_kappa, "Coupling strengths (repeat or comma-separate)")
        ->required()->delimiter(',');
    sweep->add_option("--delta", sw_delta, "Pointer widths (repeat or comma-separate)")
        ->required()->delimiter(',');
    sweep->add_option("--n-points", sw_points, "Grid points per pointer")->capture_default_str();
    add_common(sweep, run.common, "csv");
    sweep->callback([&] {
        action = [&] {
            run.params = json{{"kappa", sw_kappa}, {"delta", sw_delta}, {"n_points", sw_points}};
            const SweepTable t = eta_sweep(sw_kappa, sw_delta, sw_points);
            if (run.csv()) {
                std::string s = "kappa,delta,eta_analytic,eta_numeric,abs_diff\n";
                for (const auto &r : t.rows)
                    s += csv_join({format_double(r.kappa), format_double(r.delta),
                                   format_double(r.eta_analytic), format_double(r.eta_numeric),
                                   format_double(r.abs_diff)});
                run.emit(s);
            } else {
                run.emit(dump(io::to_json(t)));
            }
            return 0;
        };
    });

    // induce
    std::string in_unitary, in_apparatus, in_readout;
    double in_kappa = 0.0, in_delta = 0.0;
    int in_points = 4097;
    auto *induce = app.add_subcommand("induce", "Induced system POVM from a detector model");
    auto *o_u = induce->add_option("--unitary", in_unitary, "Coupling unitary on S (x) A (JSON matrix)");
    auto *o_a = induce->add_option("--apparatus", in_apparatus, "Apparatus state (JSON matrix)");
    auto *o_f = induce->add_option("--readout", in_readout, "Apparatus readout POVM (JSON)");
    auto *o_k = induce->add_option("--kappa", in_kappa, "Pointer coupling strength");
    auto *o_d = induce->add_option("--delta", in_delta, "Pointer width");
    induce->add_option("--n-points", in_points, "Pointer grid points")->capture_default_str();
    o_u->needs(o_a, o_f)->excludes(o_k, o_d);
    o_k->needs(o_d);
    o_d->needs(o_k);
    add_common(induce, run.common, "json");
    induce->callback([&] {
        action = [&]() -> int {
            if (!in_unitary.empty()) {
                run.params = json{{"unitary", in_unitary}, {"apparatus", in_apparatus}, {"readout", in_readout}};
                const UnitaryOperator u = io::unitary_from_json(run.load(in_unitary));
                const DensityOperator sigma = io::state_from_json(run.load(in_apparatus));
                const Povm f = io::povm_from_json(run.load(in_readout));
                const Povm e = induced_povm(u, sigma, f);
                run.emit(run.csv() ? csv_povm(e) : dump(json{{"povm", io::to_json(e)}}));
                return 0;
            }
            if (o_k->count() == 0) {
                throw Error(ErrorKind::validation, "induce needs --unitary/--apparatus/--readout or --kappa/--delta");
            }
            run.params = json{{"kappa", in_kappa}, {"delta", in_delta}, {"n_points", in_points}};
            PointerConfig cfg = PointerConfig::with_default_grid(in_kappa, in_delta);
            cfg.grid.n_points = in_points;
            const InducedPointerPovm res = induced_effects_numeric(cfg);
            if (run.csv()) {
                run.emit(csv_povm(res.povm));
            } else {
                run.emit(dump(json{{"povm", io::to_json(res.povm)},
                                   {"eta_numeric", res.sharpness.eta},
                                   {"eta_analytic", eta_analytic(in_kappa, in_delta).eta},
                                   {"residual", res.sharpness.residual}}));
            }
            return 0;
        };
    });

    // compat / joint-instrument share the solver knobs
    FeasibilityOptions solver;
    auto add_solver = [&](CLI::App *sub) {
        sub->add_option("--max-iter", solver.max_iter, "Iteration cap")->capture_default_str();
        sub->add_option("--tol", solver.tol, "Marginal residual tolerance")->capture_default_str();
    };
    auto solver_params = [&] { return json{{"max_iter", solver.max_iter}, {"tol", solver.tol}}; };

    std::string cp_a, cp_b;
    auto *compat = app.add_subcommand("compat", "Joint measurability of two POVMs");
    compat->add_option("first", cp_a, "First POVM (JSON)")->required();
    compat->add_option("second", cp_b, "Second POVM (JSON)")->required();
    add_solver(compat);
    add_common(compat, run.common, "json");
    compat->callback([&] {
        action = [&] {
            run.params = json{{"first", cp_a}, {"second", cp_b}, {"solver", solver_params()}};
            const Povm a = io::povm_from_json(run.load(cp_a));
            const Povm b = io::povm_from_json(run.load(cp_b));
            const CompatReport r = joint_povm_feasibility(a, b, solver);
            run.emit(run.csv() ? csv_report(r) : dump(io::to_json(r)));
            return verdict_exit(r);
        };
    });

    std::string ji_a, ji_b;
    bool ji_strict = false;
    auto *joint = app.add_subcommand("joint-instrument", "Joint instrument for two instruments");
    joint->add_option("first", ji_a, "Instrument matched as a channel (JSON)")->required();
    joint->add_option("second", ji_b, "Instrument matched by its statistics (JSON)")->required();
    joint->add_flag("--strict", ji_strict, "Match the second instrument as a channel too");
    add_solver(joint);
    add_common(joint, run.common, "json");
    joint->callback([&] {
        action = [&] {
            run.params = json{{"first", ji_a}, {"second", ji_b}, {"strict", ji_strict}, {"solver", solver_params()}};
            const Instrument a = io::instrument_from_json(run.load(ji_a));
            const Instrument b = io::instrument_from_json(run.load(ji_b));
            JointInstrumentOptions opts{solver, ji_strict ? MarginalLevel::channel : MarginalLevel::statistics};
            const CompatReport r = joint_instrument_feasibility(a, b, opts);
            run.emit(run.csv() ? csv_report(r) : dump(io::to_json(r)));
            return verdict_exit(r);
        };
    });

    // sample
    std::string sm_instrument, sm_povm, sm_state;
    std::uint64_t sm_shots = 0;
    auto *samp = app.add_subcommand("sample", "Monte-Carlo outcome records");
    auto *o_ins = samp->add_option("--instrument", sm_instrument, "Instrument (JSON)");
    auto *o_povm = samp->add_option("--povm", sm_povm, "POVM (JSON), measured with its Lueders instrument");
    o_ins->excludes(o_povm);
    samp->add_option("--state", sm_state, "Input state (JSON matrix)")->required();
    samp->add_option("--shots", sm_shots, "Number of runs")->required();
    add_common(samp, run.common, "json");
    samp->callback([&] {
        action = [&] {
            run.params = json{{"instrument", sm_instrument}, {"povm", sm_povm}, {"state", sm_state}, {"shots", sm_shots}};
            if (sm_instrument.empty() == sm_povm.empty()) {
                throw Error(ErrorKind::validation, "sample needs exactly one of --instrument or --povm");
            }
            const Instrument ins = sm_instrument.empty()
                                       ? luders_instrument(io::povm_from_json(run.load(sm_povm)))
                                       : io::instrument_from_json(run.load(sm_instrument));
            const DensityOperator rho = io::state_from_json(run.load(sm_state));
            const EventLog log = sample(ins, rho, sm_shots, run.common.seed);
            std::vector<BornComparison> cmp;
            if (log.shots >= 100) cmp = compare_to_born(log, ins, rho);
            if (run.csv()) {
                std::string s = "label,count,frequency,probability,z\n";
                const auto p = instrument_probabilities(ins, rho);
                for (std::size_t i = 0; i < log.labels.size(); ++i) {
                    s += csv_join({log.labels[i], std::to_string(log.counts[i]), format_double(log.frequency(i)),
                                   format_double(p[i]), cmp.empty() ? std::string() : format_double(cmp[i].z)});
                }
                run.emit(s);
            } else {
                json j = io::to_json(log);
                j["comparison"] = cmp.empty() ? json(nullptr) : io::to_json(cmp);
                run.emit(dump(j));
            }
            return 0;
        };
    });

    // tomo
    double tm_kappa = 0.0, tm_delta = 0.0;
    std::string tm_povm;
    std::uint64_t tm_shots = 100000;
    int tm_boot = 200;
    auto *tomo = app.add_subcommand("tomo", "Detector tomography of a binary qubit POVM");
    auto *t_k = tomo->add_option("--kappa", tm_kappa, "Pointer coupling strength");
    auto *t_d = tomo->add_option("--delta", tm_delta, "Pointer width");
    auto *t_p = tomo->add_option("--povm", tm_povm, "True POVM (JSON) instead of the pointer model");
    t_k->needs(t_d)->excludes(t_p);
    t_d->needs(t_k);
    tomo->add_option("--shots", tm_shots, "Shots per probe")->capture_default_str();
    tomo->add_option("--bootstrap", tm_boot, "Bootstrap resamples")->capture_default_str();
    add_common(tomo, run.common, "json");
    tomo->callback([&] {
        action = [&] {
            const bool pointer = t_k->count() > 0;
            if (!pointer && tm_povm.empty()) {
                throw Error(ErrorKind::validation, "tomo needs --kappa/--delta or --povm");
            }
            run.params = pointer ? json{{"kappa", tm_kappa}, {"delta", tm_delta}} : json{{"povm", tm_povm}};
            run.params["shots"] = tm_shots;
            run.params["bootstrap"] = tm_boot;
            const Povm truth = pointer
                                   ? induced_effects_numeric(PointerConfig::with_default_grid(tm_kappa, tm_delta)).povm
                                   : io::povm_from_json(run.load(tm_povm));
            const double eta_true = pointer ? eta_analytic(tm_kappa, tm_delta).eta : eta_from_povm(truth);
            const ProbeSet probes = qubit_probes();
            const CountTable counts = simulate_counts(truth, probes, tm_shots, run.common.seed);
            const TomographyResult r = estimate_eta(counts, probes, mix64(run.common.seed + 1), tm_boot);
            if (run.csv()) {
                run.emit("kappa,delta,eta_true,eta_hat,stderr\n" +
                         csv_join({pointer ? format_double(tm_kappa) : std::string(),
                                   pointer ? format_double(tm_delta) : std::string(), format_double(eta_true),
                                   format_double(r.eta_hat), format_double(r.eta_stderr)}));
            } else {
                json j = io::to_json(r);
                j["eta_true"] = eta_true;
                if (pointer) {
                    j["kappa"] = tm_kappa;
                    j["delta"] = tm_delta;
                }
                run.emit(dump(j));
            }
            return 0;
        };
    });

    // wigner-friend
    std::string wf_system = "+", wf_state, wf_basis = "bell";
    double wf_theta = std::numbers::pi;
    bool wf_strict = false;
    auto *wf = app.add_subcommand("wigner-friend", "Friend-memory scenario and its joint-instrument verdict");
    auto *w_sys = wf->add_option("--system", wf_system, "Named qubit state: 0, 1, +, -, +i, -i")->capture_default_str();
    auto *w_state = wf->add_option("--state", wf_state, "System state (JSON matrix)");
    w_sys->excludes(w_state);
    wf->add_option("--theta", wf_theta, "Coupling angle (pi copies z into the memory)")->capture_default_str();
    wf->add_option("--basis", wf_basis, "Wigner's measurement basis")
        ->check(CLI::IsMember({"bell", "computational"}))
        ->capture_default_str();
    wf->add_flag("--strict", wf_strict, "Match the friend's instrument as a channel");
    add_solver(wf);
    add_common(wf, run.common, "json");
    wf->callback([&] {
        action = [&] {
            run.params = json{{"system", wf_state.empty() ? wf_system : std::string()},
                              {"state", wf_state},
                              {"theta", wf_theta},
                              {"basis", wf_basis},
                              {"strict", wf_strict},
                              {"solver", solver_params()}};
            const DensityOperator rho =
                wf_state.empty() ? named_qubit_state(wf_system) : io::state_from_json(run.load(wf_state));
            const auto sc = build_wigner_friend(
                rho, wf_basis == "bell" ? WignerBasis::bell : WignerBasis::computational, wf_theta);
            JointInstrumentOptions opts{solver, wf_strict ? MarginalLevel::channel : MarginalLevel::statistics};
            const CompatReport r = scenario_verdict(sc, opts);
            const auto pf = instrument_probabilities(sc.friend_instrument, rho);
            const auto pw = instrument_probabilities(sc.wigner_instrument, rho);
            if (run.csv()) {
                std::string s = "instrument,label,probability\n";
                for (std::size_t i = 0; i < pf.size(); ++i)
                    s += csv_join({"friend", sc.friend_instrument[i].label, format_double(pf[i])});
                for (std::size_t i = 0; i < pw.size(); ++i)
                    s += csv_join({"wigner", sc.wigner_instrument[i].label, format_double(pw[i])});
                s += csv_join({"verdict", std::string(to_string(r.verdict)), format_double(r.witness_margin)});
                run.emit(s);
            } else {
                json fp = json::object(), wp = json::object();
                for (std::size_t i = 0; i < pf.size(); ++i) fp[sc.friend_instrument[i].label] = pf[i];
                for (std::size_t i = 0; i < pw.size(); ++i) wp[sc.wigner_instrument[i].label] = pw[i];
                run.emit(dump(json{{"theta", wf_theta},
                                   {"basis", wf_basis},
                                   {"friend_probabilities", fp},
                                   {"wigner_probabilities", wp},
                                   {"friend_instrument", io::to_json(sc.friend_instrument)},
                                   {"wigner_instrument", io::to_json(sc.wigner_instrument)},
                                   {"report", io::to_json(r)}}));
            }
            return verdict_exit(r);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 1;
    }

    for (auto *sub : app.get_subcommands()) run.subcommand = sub->get_name();
    try {
        return action();
    } catch (const Error &e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qmeas
