// Copyright 2026 The steerbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "steerbox/io.hpp"

#include <fstream>
#include <sstream>

#include "steerbox/error.hpp"

namespace steerbox {

namespace {

Json rational_json(const Rational &v) { return format_rational(v); }

bool is_number_like(const Json &v) { return v.is_number() || v.is_string(); }

Rational exact_entry(const Json &v, const char *what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return parse_rational(os.str());
    }
    throw Error(ErrorCode::Parse, std::string("expected a number or rational string for ") + what);
}

double float_entry(const Json &v, const char *what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw Error(ErrorCode::Parse, std::string("expected a number or rational string for ") + what);
}

const Json &member(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

const Json &index(const Json &j, std::size_t i, std::size_t n, const char *what) {
    if (!j.is_array() || j.size() != n) {
        throw Error(ErrorCode::Parse, std::string(what) + " must be an array of length " + std::to_string(n));
    }
    return j[i];
}

}  // namespace

Json box_to_json(const Box &box) {
    Json p = Json::array();
    for (int x = 0; x < 2; ++x) {
        Json px = Json::array();
        for (int y = 0; y < 2; ++y) {
            Json py = Json::array();
            for (int a = 0; a < 2; ++a) {
                Json pa = Json::array();
                for (int b = 0; b < 2; ++b) {
                    if (box.is_exact()) {
                        pa.push_back(rational_json(box.p_exact(x, y, a, b)));
                    } else {
                        pa.push_back(box.p(x, y, a, b));
                    }
                }
                py.push_back(pa);
            }
            px.push_back(py);
        }
        p.push_back(px);
    }
    Json j;
    j["scenario"] = {{"inputs_a", 2}, {"inputs_b", 2}, {"outputs_a", 2}, {"outputs_b", 2}};
    j["mode"] = box.is_exact() ? "rational" : "float";
    j["p"] = p;
    return j;
}

Box box_from_json(const Json &j) {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "a box document must be a JSON object");
    if (j.contains("scenario")) {
        const Json &s = j.at("scenario");
        bool ok = s.is_string() ? s == "2222" : s.is_object();
        if (ok && s.is_object()) {
            for (const char *k : {"inputs_a", "inputs_b", "outputs_a", "outputs_b"}) {
                ok = ok && s.contains(k) && s.at(k).is_number_integer() && s.at(k).get<int>() == 2;
            }
        }
        if (!ok) throw Error(ErrorCode::Parse, "only two inputs and two outputs per side are supported");
    }
    std::string mode = "auto";
    if (j.contains("mode")) {
        mode = j.at("mode").get<std::string>();
        if (mode != "rational" && mode != "float") throw Error(ErrorCode::Parse, "mode must be rational or float");
    }
    const Json &p = member(j, "p");
    std::array<const Json *, 16> cells{};
    bool all_strings = true;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Json &v = index(index(index(index(p, static_cast<std::size_t>(x), 2, "p"),
                                                      static_cast<std::size_t>(y), 2, "p[x]"),
                                                static_cast<std::size_t>(a), 2, "p[x][y]"),
                                          static_cast<std::size_t>(b), 2, "p[x][y][a]");
                    if (!is_number_like(v)) throw Error(ErrorCode::Parse, "box entries must be numbers or strings");
                    all_strings = all_strings && v.is_string();
                    cells[box_index(x, y, a, b)] = &v;
                }
    bool exact = mode == "rational" || (mode == "auto" && all_strings);
    if (exact) {
        std::array<Rational, 16> e{};
        for (std::size_t i = 0; i < 16; ++i) e[i] = exact_entry(*cells[i], "box entry");
        return Box::from_rational(e);
    }
    std::array<double, 16> d{};
    for (std::size_t i = 0; i < 16; ++i) d[i] = float_entry(*cells[i], "box entry");
    return Box::from_double(d);
}

Json state_to_json(const DensityMatrix &state) {
    Json rho = Json::array();
    int n = state.dimension();
    for (int r = 0; r < n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < n; ++c) {
            if (state.exact()) {
                const auto &v = (*state.exact())(r, c);
                row.push_back(Json::array({rational_json(v.re), rational_json(v.im)}));
            } else {
                auto v = state.matrix()(r, c);
                row.push_back(Json::array({v.real(), v.imag()}));
            }
        }
        rho.push_back(row);
    }
    Json j;
    j["dimension"] = n;
    j["mode"] = state.exact() ? "rational" : "float";
    j["rho"] = rho;
    return j;
}

DensityMatrix state_from_json(const Json &j) {
    const Json &rho = member(j, "rho");
    if (!rho.is_array() || (rho.size() != 2 && rho.size() != 4)) {
        throw Error(ErrorCode::InvalidState, "rho must be a 2x2 or 4x4 array");
    }
    const int n = static_cast<int>(rho.size());
    if (j.contains("dimension") && j.at("dimension") != n) {
        throw Error(ErrorCode::InvalidState, "dimension field disagrees with rho");
    }
    std::vector<std::pair<const Json *, const Json *>> cells;
    bool all_strings = true;
    for (int r = 0; r < n; ++r) {
        const Json &row = rho[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidState, "rho is not square");
        for (int c = 0; c < n; ++c) {
            const Json &v = row[static_cast<std::size_t>(c)];
            if (v.is_array()) {
                if (v.size() != 2) throw Error(ErrorCode::Parse, "complex entries are [re, im] pairs");
                cells.emplace_back(&v[0], &v[1]);
                all_strings = all_strings && v[0].is_string() && v[1].is_string();
            } else {
                cells.emplace_back(&v, nullptr);
                all_strings = all_strings && v.is_string();
            }
        }
    }
    std::string mode = j.contains("mode") ? j.at("mode").get<std::string>() : "auto";
    if (mode == "rational" || (mode == "auto" && all_strings)) {
        ExactMatrix m(n);
        for (int i = 0; i < n * n; ++i) {
            const auto &[re, im] = cells[static_cast<std::size_t>(i)];
            m(i / n, i % n) = {exact_entry(*re, "state entry"), im ? exact_entry(*im, "state entry") : Rational(0)};
        }
        return DensityMatrix::from_exact(m);
    }
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n * n; ++i) {
        const auto &[re, im] = cells[static_cast<std::size_t>(i)];
        m(i / n, i % n) = {float_entry(*re, "state entry"), im ? float_entry(*im, "state entry") : 0.0};
    }
    return DensityMatrix::from_matrix(m);
}

DensityMatrix named_state(const std::string &name) {
    if (name == "one-way-discord") return one_way_discord_state();
    if (name == "maximally-mixed") return maximally_mixed_state(4);
    if (name == "product-zz") {
        ExactMatrix up(2), plus(2);
        up(0, 0) = {1, 0};
        Rational h(1, 2);
        plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = {h, 0};
        return product_state(DensityMatrix::from_exact(up), DensityMatrix::from_exact(plus));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown state '" + name + "'");
}

Json single_party_to_json(const SinglePartyBox &q) {
    Json out = Json::array();
    for (int in = 0; in < 2; ++in) {
        Json row = Json::array();
        for (int o = 0; o < 2; ++o) {
            if (q.is_exact()) {
                row.push_back(rational_json(q.prob_exact(in, o)));
            } else {
                row.push_back(q.prob(in, o));
            }
        }
        out.push_back(row);
    }
    return out;
}

Json model_to_json(const HiddenVariableModel &m) {
    Json j;
    j["untrusted"] = party_name(m.untrusted);
    j["trusted_kind"] = trusted_kind_name(m.trusted_kind);
    j["dimension"] = m.dimension();
    Json w = Json::array();
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        if (m.exact_weights) {
            w.push_back(rational_json((*m.exact_weights)[l]));
        } else {
            w.push_back(m.weights[l]);
        }
    }
    j["weights"] = w;
    Json u = Json::array(), t = Json::array();
    for (const auto &q : m.untrusted_responses) u.push_back(single_party_to_json(q));
    for (const auto &q : m.trusted_responses) t.push_back(single_party_to_json(q));
    j["untrusted_responses"] = u;
    j["trusted_responses"] = t;
    return j;
}

Json case_report_to_json(const CaseReport &r) {
    Json j;
    j["untrusted"] = party_name(r.untrusted);
    j["single_term"] = r.single_term;
    j["all_infeasible"] = r.all_infeasible();
    Json cases = Json::array();
    for (const auto &c : r.cases) {
        Json cj;
        cj["family"] = c.family;
        cj["label"] = c.label;
        cj["groups"] = c.groups;
        cj["feasible"] = c.feasible;
        cj["trace"] = c.trace;
        if (c.model) cj["model"] = model_to_json(*c.model);
        cases.push_back(cj);
    }
    j["cases"] = cases;
    return j;
}

Json feasibility_to_json(const FeasibilityResult &r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    j["exact"] = r.exact();
    j["dimension"] = r.dimension;
    j["untrusted"] = party_name(r.untrusted);
    j["trusted_kind"] = trusted_kind_name(r.trusted_kind);
    if (r.certificate) {
        j["certificate"] = model_to_json(*r.certificate);
        j["certificate_error"] = r.certificate_error;
    }
    if (r.residual) {
        j["residual"] = {{"min_residual", r.residual->min_residual},
                         {"starts", r.residual->starts},
                         {"best_start", r.residual->best_start},
                         {"seed", r.residual->seed},
                         {"evaluations", r.residual->evaluations}};
    }
    if (r.exact_vertex_weights) {
        Json w = Json::array();
        for (const auto &v : *r.exact_vertex_weights) w.push_back(rational_json(v));
        j["vertex_weights"] = w;
    } else if (r.vertex_weights) {
        j["vertex_weights"] = *r.vertex_weights;
    }
    if (r.cases) j["cases"] = case_report_to_json(*r.cases);
    j["provenance"] = r.provenance;
    return j;
}

Json property_to_json(const PropertyVerdict &v) {
    Json j;
    j["holds"] = tri_name(v.holds);
    j["exact"] = v.exact();
    j["evidence"] = feasibility_to_json(v.evidence);
    if (v.precondition) j["precondition"] = feasibility_to_json(*v.precondition);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json discord_to_json(const DiscordResult &r) {
    const auto &n = r.argmin.bloch();
    return {{"direction", direction_name(r.direction)},
            {"discord", r.discord},
            {"mutual_information", r.mutual_information},
            {"classical_correlation", r.classical_correlation},
            {"conditional_entropy", r.conditional_entropy},
            {"measurement_bloch", {n[0], n[1], n[2]}}};
}

Json parse_json_text(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_json_text(os.str());
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace steerbox
