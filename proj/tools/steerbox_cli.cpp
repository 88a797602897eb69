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

#include <steerbox.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaims = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Options {
    std::string input;
    std::string out;
    std::string mode = "rational";
    std::string family;
    std::string dir = "ab";
    double v = 1.0;
    int da = 2;
    int db = 2;
    bool printed_tables = false;
    steerbox_config cfg{};
};

int exit_for(steerbox_status st) {
    switch (st) {
        case STEERBOX_OK:
            return kExitOk;
        case STEERBOX_E_IO:
            return kExitIo;
        case STEERBOX_E_INTERNAL:
            return kExitClaims;
        default:
            return kExitValidation;
    }
}

int fail(steerbox_status st) {
    std::fprintf(stderr, "steerbox: %s: %s\n", steerbox_status_name(st), steerbox_last_error());
    return exit_for(st);
}

// Takes ownership of `s`.
void emit(char *s) {
    if (!s) return;
    std::fputs(s, stdout);
    std::size_t n = std::char_traits<char>::length(s);
    if (n == 0 || s[n - 1] != '\n') std::fputc('\n', stdout);
    steerbox_string_free(s);
}

int write_file(const std::string &path, char *text) {
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "steerbox: io-error: cannot write '%s'\n", path.c_str());
        steerbox_string_free(text);
        return kExitIo;
    }
    std::fputs(text, f);
    std::fputc('\n', f);
    bool ok = std::fclose(f) == 0;
    steerbox_string_free(text);
    if (!ok) {
        std::fprintf(stderr, "steerbox: io-error: write to '%s' failed\n", path.c_str());
        return kExitIo;
    }
    return kExitOk;
}

steerbox_status load_box(const Options &o, steerbox_box **box) {
    steerbox_status st = steerbox_box_load(o.input.c_str(), box);
    if (st != STEERBOX_OK || o.mode != "float") return st;
    steerbox_box *f = nullptr;
    st = steerbox_box_as_float(*box, &f);
    steerbox_box_free(*box);
    *box = f;
    return st;
}

int cmd_analyze(const Options &o) {
    steerbox_box *box = nullptr;
    if (auto st = load_box(o, &box); st != STEERBOX_OK) return fail(st);
    char *json = nullptr;
    char *text = nullptr;
    steerbox_status st = steerbox_analyze(box, o.da, o.db, &o.cfg, &json, &text);
    steerbox_box_free(box);
    if (st != STEERBOX_OK) return fail(st);
    emit(text);
    if (o.out.empty()) {
        steerbox_string_free(json);
        return kExitOk;
    }
    return write_file(o.out, json);
}

int cmd_check(const Options &o, int d, const std::string &untrusted, const std::string &kind) {
    steerbox_box *box = nullptr;
    if (auto st = load_box(o, &box); st != STEERBOX_OK) return fail(st);
    char *json = nullptr;
    steerbox_status st = steerbox_restricted_feasibility(
        box, d, untrusted == "bob" ? STEERBOX_BOB : STEERBOX_ALICE,
        kind == "qubit-mub" ? STEERBOX_TRUSTED_QUBIT_MUB : STEERBOX_TRUSTED_UNCONSTRAINED, &o.cfg, &json);
    steerbox_box_free(box);
    if (st != STEERBOX_OK) return fail(st);
    if (o.out.empty()) {
        emit(json);
        return kExitOk;
    }
    return write_file(o.out, json);
}

int cmd_family(const Options &o) {
    steerbox_box *box = nullptr;
    if (auto st = steerbox_box_family(o.family.c_str(), o.v, &box); st != STEERBOX_OK) return fail(st);
    if (o.mode == "float") {
        steerbox_box *f = nullptr;
        steerbox_status st = steerbox_box_as_float(box, &f);
        steerbox_box_free(box);
        if (st != STEERBOX_OK) return fail(st);
        box = f;
    }
    char *json = nullptr;
    steerbox_status st = steerbox_box_to_json(box, &json);
    steerbox_box_free(box);
    if (st != STEERBOX_OK) return fail(st);
    if (o.out.empty()) {
        emit(json);
        return kExitOk;
    }
    return write_file(o.out, json);
}

int cmd_discord(const Options &o) {
    steerbox_state *state = nullptr;
    steerbox_status st = std::filesystem::exists(o.input) ? steerbox_state_load(o.input.c_str(), &state)
                                                          : steerbox_state_named(o.input.c_str(), &state);
    if (st != STEERBOX_OK) return fail(st);
    double value = 0;
    char *json = nullptr;
    st = steerbox_discord(state, o.dir == "ba" ? STEERBOX_B_TO_A : STEERBOX_A_TO_B, &value, &json);
    steerbox_state_free(state);
    if (st != STEERBOX_OK) return fail(st);
    if (o.out.empty()) {
        emit(json);
        return kExitOk;
    }
    std::printf("discord %s = %.12g\n", o.dir.c_str(), value);
    return write_file(o.out, json);
}

int cmd_reproduce(const Options &o) {
    std::error_code ec;
    std::filesystem::create_directories(o.out, ec);
    if (ec) {
        std::fprintf(stderr, "steerbox: io-error: cannot create '%s': %s\n", o.out.c_str(), ec.message().c_str());
        return kExitIo;
    }
    int all_pass = 0;
    char *text = nullptr;
    steerbox_status st = steerbox_reproduce(&o.cfg, o.printed_tables ? 1 : 0, o.out.c_str(), &all_pass, &text);
    if (st != STEERBOX_OK) return fail(st);
    emit(text);
    return all_pass ? kExitOk : kExitClaims;
}

void add_solver_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--starts", o.cfg.starts, "numeric search starts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.cfg.seed, "solver seed (STEERBOX_SEED overrides)");
    cmd->add_option("--residual-threshold", o.cfg.residual_threshold, "min residual counted as infeasible")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--feasible-residual", o.cfg.feasible_residual, "max residual accepted for a certificate")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.cfg.threads, "worker threads, 0 = hardware")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char **argv) {
    Options o;
    steerbox_config_default(&o.cfg);

    CLI::App app{"Locality, superlocality and steering analysis of two-input two-output boxes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(steerbox_version()));

    auto *analyze = app.add_subcommand("analyze", "classify a box from a JSON file");
    analyze->add_option("box", o.input, "box JSON file")->required();
    analyze->add_option("--da", o.da, "Alice's Hilbert-space dimension")->check(CLI::PositiveNumber);
    analyze->add_option("--db", o.db, "Bob's Hilbert-space dimension")->check(CLI::PositiveNumber);
    analyze->add_option("--mode", o.mode, "arithmetic")->check(CLI::IsMember({"rational", "float"}));
    analyze->add_option("--out", o.out, "write the JSON report here");
    add_solver_flags(analyze, o);

    int check_d = 2;
    std::string check_untrusted = "alice";
    std::string check_kind = "qubit-mub";
    auto *check = app.add_subcommand("check", "restricted-dimension feasibility for one box");
    check->add_option("box", o.input, "box JSON file")->required();
    check->add_option("-d,--dimension", check_d, "hidden-variable dimension")->check(CLI::PositiveNumber);
    check->add_option("--untrusted", check_untrusted, "untrusted party")->check(CLI::IsMember({"alice", "bob"}));
    check->add_option("--trusted", check_kind, "trusted-side responses")
        ->check(CLI::IsMember({"qubit-mub", "unconstrained"}));
    check->add_option("--mode", o.mode, "arithmetic")->check(CLI::IsMember({"rational", "float"}));
    check->add_option("--out", o.out, "write the JSON result here");
    add_solver_flags(check, o);

    auto *family = app.add_subcommand("family", "emit a named box");
    family->add_option("name", o.family, "chsh, bb84, one-way-discord, uniform or pr")
        ->required()
        ->check(CLI::IsMember({"chsh", "bb84", "one-way-discord", "uniform", "pr"}));
    family->add_option("--v", o.v, "visibility in [0, 1]");
    family->add_option("--mode", o.mode, "arithmetic")->check(CLI::IsMember({"rational", "float"}));
    family->add_option("--out", o.out, "output file");

    auto *disc = app.add_subcommand("discord", "quantum discord of a two-qubit state");
    disc->add_option("state", o.input, "state JSON file, or one-way-discord, maximally-mixed, product-zz")->required();
    disc->add_option("--dir", o.dir, "ab measures Alice, ba measures Bob")->check(CLI::IsMember({"ab", "ba"}));
    disc->add_option("--out", o.out, "write the JSON result here");

    auto *repro = app.add_subcommand("reproduce", "run every claim and write report.json and report.txt");
    o.out = "reproduction";
    repro->add_option("--out", o.out, "output directory");
    repro->add_flag("--printed-tables", o.printed_tables, "use the two-term tables exactly as printed");
    add_solver_flags(repro, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }
    if (!repro->parsed() && o.out == "reproduction") o.out.clear();

    if (const char *env = std::getenv("STEERBOX_SEED"); env && *env) {
        char *end = nullptr;
        unsigned long long s = std::strtoull(env, &end, 10);
        if (*end != '\0') {
            std::fprintf(stderr, "steerbox: config-error: STEERBOX_SEED must be an unsigned integer\n");
            return kExitValidation;
        }
        o.cfg.seed = s;
    }

    if (analyze->parsed()) return cmd_analyze(o);
    if (check->parsed()) return cmd_check(o, check_d, check_untrusted, check_kind);
    if (family->parsed()) return cmd_family(o);
    if (disc->parsed()) return cmd_discord(o);
    return cmd_reproduce(o);
}
