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

#include "qmeas/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "qmeas/errors.hpp"

namespace qmeas::io {

namespace {

[[noreturn]] void parse_fail(const std::string &what) { throw Error(ErrorKind::parse, what); }

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t as_size(const json &j, const char *what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        parse_fail(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

// Non-finite values have no JSON literal; they are written as strings.
json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

json optional_matrix_list(const std::vector<ComplexMatrix> &ms) {
    json arr = json::array();
    for (const auto &m : ms) arr.push_back(to_json(m));
    return arr;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

json to_json(const ComplexMatrix &m) {
    json data = json::array();
    for (const auto &z : m.data()) data.push_back(json::array({z.real(), z.imag()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json &j) {
    const std::size_t rows = as_size(field(j, "rows"), "rows");
    const std::size_t cols = as_size(field(j, "cols"), "cols");
    const json &data = field(j, "data");
    if (!data.is_array()) parse_fail("matrix data must be an array");
    std::vector<cplx> values;
    values.reserve(data.size());
    for (const auto &entry : data) {
        if (entry.is_number()) {
            values.emplace_back(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                   entry[1].is_number()) {
            values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        } else {
            parse_fail("matrix entries must be numbers or [re, im] pairs");
        }
    }
    if (values.size() != rows * cols) parse_fail("matrix data length does not match rows * cols");
    return ComplexMatrix(rows, cols, std::move(values));
}

json to_json(const Povm &p) {
    json labels = json::array();
    json effects = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        labels.push_back(p.labels()[i]);
        effects.push_back(to_json(p[i].matrix()));
    }
    return json{{"labels", std::move(labels)}, {"effects", std::move(effects)}};
}

Povm povm_from_json(const json &j) {
    const json &effects = field(j, "effects");
    if (!effects.is_array() || effects.empty()) parse_fail("'effects' must be a non-empty array");
    std::vector<Effect> es;
    for (const auto &e : effects) es.emplace_back(matrix_from_json(e));
    if (!j.contains("labels")) return Povm(std::move(es));
    std::vector<std::string> labels;
    for (const auto &l : j.at("labels")) {
        if (!l.is_string()) parse_fail("labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    return Povm(std::move(es), std::move(labels));
}

json to_json(const Instrument &ins) {
    json branches = json::object();
    for (const auto &b : ins.branches()) branches[b.label] = optional_matrix_list(b.ops);
    return json{{"dims", json::array({ins.d_in(), ins.d_out()})}, {"branches", std::move(branches)}};
}

Instrument instrument_from_json(const json &j) {
    const json &dims = field(j, "dims");
    if (!dims.is_array() || dims.size() != 2) parse_fail("'dims' must be [d_in, d_out]");
    const std::size_t d_in = as_size(dims[0], "d_in");
    const std::size_t d_out = as_size(dims[1], "d_out");
    const json &branches = field(j, "branches");
    if (!branches.is_object() || branches.empty()) parse_fail("'branches' must be a non-empty object");
    std::vector<Instrument::Branch> out;
    for (const auto &[label, ops] : branches.items()) {
        if (!ops.is_array() || ops.empty()) parse_fail("branch '" + label + "' needs Kraus operators");
        Instrument::Branch b{label, {}};
        for (const auto &k : ops) b.ops.push_back(matrix_from_json(k));
        out.push_back(std::move(b));
    }
    Instrument ins(std::move(out));
    if (ins.d_in() != d_in || ins.d_out() != d_out) {
        throw Error(ErrorKind::dimension, "Kraus operator shapes disagree with 'dims'");
    }
    return ins;
}

DensityOperator state_from_json(const json &j) {
    return DensityOperator(matrix_from_json(j.contains("state") ? j.at("state") : j));
}

UnitaryOperator unitary_from_json(const json &j) {
    return UnitaryOperator(matrix_from_json(j.contains("unitary") ? j.at("unitary") : j));
}

json to_json(const CompatReport &r) {
    json out{{"verdict", std::string(to_string(r.verdict))},
             {"witness_margin", number(r.witness_margin)},
             {"iterations", r.iterations},
             {"tolerance", r.tolerance},
             {"marginal_residual", number(r.marginal_residual)},
             {"joint", nullptr}};
    if (r.joint_povm) {
        const auto &g = *r.joint_povm;
        json effects = json::array();
        for (const auto &e : g.effects()) effects.push_back(to_json(e.matrix()));
        out["joint"] = json{{"kind", "povm"},
                            {"labels_a", std::vector<std::string>(g.labels_a().begin(), g.labels_a().end())},
                            {"labels_b", std::vector<std::string>(g.labels_b().begin(), g.labels_b().end())},
                            {"effects", std::move(effects)}};
    } else if (r.joint_instrument) {
        const auto &g = *r.joint_instrument;
        json choi = json::array();
        for (const auto &c : g.blocks) choi.push_back(to_json(c.matrix()));
        out["joint"] = json{{"kind", "instrument"},
                            {"labels_f", g.labels_f},
                            {"labels_w", g.labels_w},
                            {"choi", std::move(choi)},
                            {"instrument", to_json(g.to_instrument())}};
    }
    return out;
}

json to_json(const EventLog &log) {
    json counts = json::object();
    for (std::size_t i = 0; i < log.labels.size(); ++i) counts[log.labels[i]] = log.counts[i];
    return json{{"labels", log.labels}, {"counts", std::move(counts)}, {"shots", log.shots}, {"seed", log.seed}};
}

json to_json(const std::vector<BornComparison> &rows) {
    json arr = json::array();
    for (const auto &c : rows) {
        arr.push_back(json{{"label", c.label},
                           {"count", c.count},
                           {"frequency", c.frequency},
                           {"probability", c.probability},
                           {"z", number(c.z)},
                           {"degenerate", c.degenerate}});
    }
    return arr;
}

json to_json(const TomographyResult &r) {
    return json{{"povm_hat", to_json(r.povm_hat)},
                {"eta_hat", r.eta_hat},
                {"eta_stderr", r.eta_stderr},
                {"shots_per_probe", r.shots_per_probe},
                {"bootstrap_samples", r.bootstrap_samples}};
}

json to_json(const SweepTable &t) {
    json rows = json::array();
    for (const auto &r : t.rows) {
        rows.push_back(json{{"kappa", r.kappa},
                            {"delta", r.delta},
                            {"eta_analytic", r.eta_analytic},
                            {"eta_numeric", r.eta_numeric},
                            {"abs_diff", r.abs_diff}});
    }
    return json{{"rows", std::move(rows)}, {"max_abs_diff", t.max_abs_diff}};
}

json read_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::parse, "'" + path.string() + "': " + e.what());
    }
}

} // namespace qmeas::io
