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

#include "steerbox.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "steerbox/certify.hpp"
#include "steerbox/error.hpp"
#include "steerbox/io.hpp"

struct steerbox_box {
    steerbox::Box box;
};

struct steerbox_state {
    steerbox::DensityMatrix state;
};

namespace {

thread_local std::string g_last_error;

steerbox_status map_code(steerbox::ErrorCode code) {
    using steerbox::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument:
            return STEERBOX_E_INVALID_ARGUMENT;
        case ErrorCode::Parse:
            return STEERBOX_E_PARSE;
        case ErrorCode::InvalidBox:
            return STEERBOX_E_INVALID_BOX;
        case ErrorCode::Signaling:
            return STEERBOX_E_SIGNALING;
        case ErrorCode::InvalidState:
        case ErrorCode::InvalidAssemblage:
            return STEERBOX_E_INVALID_STATE;
        case ErrorCode::Range:
            return STEERBOX_E_RANGE;
        case ErrorCode::Nonlocal:
            return STEERBOX_E_NONLOCAL;
        case ErrorCode::NonRational:
            return STEERBOX_E_NON_RATIONAL;
        case ErrorCode::Config:
            return STEERBOX_E_CONFIG;
        case ErrorCode::Io:
            return STEERBOX_E_IO;
    }
    return STEERBOX_E_INTERNAL;
}

template <class F>
steerbox_status guarded(F &&f) {
    try {
        f();
        g_last_error.clear();
        return STEERBOX_OK;
    } catch (const steerbox::Error &e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const nlohmann::json::exception &e) {
        g_last_error = std::string("malformed JSON document: ") + e.what();
        return STEERBOX_E_PARSE;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return STEERBOX_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return STEERBOX_E_INTERNAL;
    }
}

void require(const void *p, const char *what) {
    if (!p) throw steerbox::Error(steerbox::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

steerbox::SolverConfig solver_config(const steerbox_config *cfg) {
    steerbox::SolverConfig s;
    if (cfg) {
        s.starts = cfg->starts;
        s.seed = cfg->seed;
        s.residual_threshold = cfg->residual_threshold;
        s.feasible_residual = cfg->feasible_residual;
        s.threads = cfg->threads;
    }
    steerbox::validate_config(s);
    return s;
}

steerbox::Party party(steerbox_party p) {
    if (p != STEERBOX_ALICE && p != STEERBOX_BOB) throw steerbox::Error(steerbox::ErrorCode::InvalidArgument, "bad party");
    return p == STEERBOX_ALICE ? steerbox::Party::Alice : steerbox::Party::Bob;
}

}  // namespace

extern "C" {

const char *steerbox_version(void) { return "0.1.0"; }

const char *steerbox_status_name(steerbox_status status) {
    switch (status) {
        case STEERBOX_OK:
            return "ok";
        case STEERBOX_E_INVALID_ARGUMENT:
            return "invalid-argument";
        case STEERBOX_E_PARSE:
            return "parse-error";
        case STEERBOX_E_INVALID_BOX:
            return "invalid-box";
        case STEERBOX_E_SIGNALING:
            return "signaling-box";
        case STEERBOX_E_INVALID_STATE:
            return "invalid-state";
        case STEERBOX_E_RANGE:
            return "range-error";
        case STEERBOX_E_NONLOCAL:
            return "nonlocal-box";
        case STEERBOX_E_NON_RATIONAL:
            return "non-rational-box";
        case STEERBOX_E_CONFIG:
            return "config-error";
        case STEERBOX_E_IO:
            return "io-error";
        case STEERBOX_E_INTERNAL:
            return "internal-error";
    }
    return "unknown";
}

const char *steerbox_last_error(void) { return g_last_error.c_str(); }

void steerbox_string_free(char *s) { std::free(s); }

void steerbox_config_default(steerbox_config *cfg) {
    if (!cfg) return;
    steerbox::SolverConfig d;
    cfg->starts = d.starts;
    cfg->seed = d.seed;
    cfg->residual_threshold = d.residual_threshold;
    cfg->feasible_residual = d.feasible_residual;
    cfg->threads = d.threads;
}

steerbox_status steerbox_box_from_json(const char *json, steerbox_box **out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new steerbox_box{steerbox::box_from_json(steerbox::parse_json_text(json))};
    });
}

steerbox_status steerbox_box_load(const char *path, steerbox_box **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new steerbox_box{steerbox::box_from_json(steerbox::read_json_file(path))};
    });
}

steerbox_status steerbox_box_save(const steerbox_box *box, const char *path) {
    return guarded([&] {
        require(box, "box");
        require(path, "path");
        steerbox::write_text_file(path, steerbox::box_to_json(box->box).dump(2) + "\n");
    });
}

steerbox_status steerbox_box_to_json(const steerbox_box *box, char **out) {
    return guarded([&] {
        require(box, "box");
        require(out, "out");
        *out = dup_string(steerbox::box_to_json(box->box).dump(2));
    });
}

steerbox_status steerbox_box_family(const char *name, double v, steerbox_box **out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        std::string n = name;
        if (n == "chsh") {
            *out = new steerbox_box{steerbox::noisy_chsh_box(v)};
        } else if (n == "bb84") {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, v);
            if (res.ec != std::errc() || !std::isfinite(v)) {
                throw steerbox::Error(steerbox::ErrorCode::Range, "visibility must lie in [0, 1]");
            }
            *out = new steerbox_box{steerbox::bb84_box(steerbox::parse_rational(std::string(buf, res.ptr)))};
        } else if (n == "one-way-discord") {
            *out = new steerbox_box{steerbox::one_way_discord_box()};
        } else if (n == "uniform") {
            *out = new steerbox_box{steerbox::uniform_box()};
        } else if (n == "pr") {
            *out = new steerbox_box{steerbox::pr_box()};
        } else {
            throw steerbox::Error(steerbox::ErrorCode::InvalidArgument, "unknown family '" + n + "'");
        }
    });
}

steerbox_status steerbox_box_as_float(const steerbox_box *box, steerbox_box **out) {
    return guarded([&] {
        require(box, "box");
        require(out, "out");
        *out = new steerbox_box{box->box.as_float()};
    });
}

steerbox_status steerbox_box_entry(const steerbox_box *box, int x, int y, int a, int b, double *out) {
    return guarded([&] {
        require(box, "box");
        require(out, "out");
        for (int v : {x, y, a, b})
            if (v != 0 && v != 1) throw steerbox::Error(steerbox::ErrorCode::InvalidArgument, "indices must be bits");
        *out = box->box.p(x, y, a, b);
    });
}

steerbox_status steerbox_box_is_exact(const steerbox_box *box, int *out) {
    return guarded([&] {
        require(box, "box");
        require(out, "out");
        *out = box->box.is_exact() ? 1 : 0;
    });
}

steerbox_status steerbox_box_is_nosignaling(const steerbox_box *box, int *out) {
    return guarded([&] {
        require(box, "box");
        require(out, "out");
        *out = steerbox::is_nosignaling(box->box) ? 1 : 0;
    });
}

steerbox_status steerbox_box_chsh_max(const steerbox_box *box, double *out) {
    return guarded([&] {
        require(box, "box");
        require(out, "out");
        *out = steerbox::chsh_max(box->box).value;
    });
}

void steerbox_box_free(steerbox_box *box) { delete box; }

steerbox_status steerbox_analyze(const steerbox_box *box, int d_a, int d_b, const steerbox_config *cfg,
                                 char **report_json, char **report_text) {
    return guarded([&] {
        require(box, "box");
        auto rep = steerbox::classify(box->box, d_a, d_b, solver_config(cfg));
        std::string j = steerbox::classification_to_json(rep).dump(2);
        std::string t = steerbox::classification_to_text(rep);
        if (report_json) *report_json = dup_string(j);
        if (report_text) *report_text = dup_string(t);
    });
}

steerbox_status steerbox_restricted_feasibility(const steerbox_box *box, int d, steerbox_party untrusted,
                                                steerbox_trusted_kind kind, const steerbox_config *cfg,
                                                char **result_json) {
    return guarded([&] {
        require(box, "box");
        require(result_json, "result_json");
        auto k = kind == STEERBOX_TRUSTED_QUBIT_MUB ? steerbox::TrustedKind::QubitMub
                                                    : steerbox::TrustedKind::Unconstrained;
        auto r = steerbox::restricted_feasibility(box->box, d, party(untrusted), k, solver_config(cfg));
        *result_json = dup_string(steerbox::feasibility_to_json(r).dump(2));
    });
}

steerbox_status steerbox_state_from_json(const char *json, steerbox_state **out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new steerbox_state{steerbox::state_from_json(steerbox::parse_json_text(json))};
    });
}

steerbox_status steerbox_state_load(const char *path, steerbox_state **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new steerbox_state{steerbox::state_from_json(steerbox::read_json_file(path))};
    });
}

steerbox_status steerbox_state_named(const char *name, steerbox_state **out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        *out = new steerbox_state{steerbox::named_state(name)};
    });
}

void steerbox_state_free(steerbox_state *state) { delete state; }

steerbox_status steerbox_discord(const steerbox_state *state, steerbox_direction direction, double *value,
                                 char **report_json) {
    return guarded([&] {
        require(state, "state");
        if (state->state.dimension() != 4) {
            throw steerbox::Error(steerbox::ErrorCode::InvalidState, "discord needs a two-qubit state");
        }
        auto dir = direction == STEERBOX_B_TO_A ? steerbox::Direction::BobToAlice : steerbox::Direction::AliceToBob;
        auto r = steerbox::discord(state->state, dir);
        if (value) *value = r.discord;
        if (report_json) *report_json = dup_string(steerbox::discord_to_json(r).dump(2));
    });
}

steerbox_status steerbox_reproduce(const steerbox_config *cfg, int printed_tables, const char *out_dir, int *all_pass,
                                   char **report_text) {
    return guarded([&] {
        steerbox::ReproductionOptions opts;
        opts.solver = solver_config(cfg);
        opts.printed_tables = printed_tables != 0;
        auto rep = steerbox::reproduce_claims(opts);
        if (out_dir) steerbox::write_reproduction(rep, out_dir);
        if (all_pass) *all_pass = rep.all_pass() ? 1 : 0;
        if (report_text) *report_text = dup_string(rep.to_text());
    });
}

}  // extern "C"
