// Command-line front end: builds Cayley algebras, reports derivation-space
// dimensions, and runs verification suites.
//
// Exit codes: 0 success, 1 construction or axiom failure, 2 usage error,
// 3 verification failure.

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cayley/algebra.hpp"
#include "cayley/construct.hpp"
#include "cayley/derivations.hpp"
#include "cayley/errors.hpp"
#include "cayley/field.hpp"
#include "cayley/report.hpp"
#include "cayley/sampling.hpp"
#include "cayley/theorems.hpp"

namespace {

using namespace cayley;

struct Args {
    std::string command;
    std::string field_text = "q";
    std::string algebra = "split";
    std::string mu_text = "-1,-1,-1";
    std::string input;
    std::string output;
    std::string format = "text";
    std::string suite_text = "all";
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    bool emit_basis = false;
};

/// Writes `text` to the -o target, or stdout when none was given.
int write_output(const Args& a, const std::string& text) {
    if (a.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(a.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << a.output << "' for writing\n";
        return 1;
    }
    out << text;
    return out ? 0 : 1;
}

Json load_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw parse_error("cannot open '" + path + "' for reading");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw parse_error("invalid JSON in '" + path + "': " + e.what());
    }
}

template <ScalarField F>
std::array<F, 3> parse_mu(const FieldSpec& s, const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    if (parts.size() != 3) throw parse_error("--mu needs exactly three comma-separated scalars");
    return {F::parse(s, parts[0]), F::parse(s, parts[1]), F::parse(s, parts[2])};
}

/// Builds from flags or loads from --input; throws cayley::error on failure.
template <ScalarField F>
CayleyAlgebra<F> obtain_algebra(const Args& a, const FieldSpec& s, const std::optional<Json>& input) {
    if (input) return algebra_from_json<F>(*input);
    if (a.algebra == "split") return split_cayley<F>(s);
    return cayley_dickson<F>(s, parse_mu<F>(s, a.mu_text));
}

void print_failed_checks(const std::vector<CheckOutcome>& checks) {
    for (const CheckOutcome& chk : checks) {
        if (chk.status != CheckStatus::fail) continue;
        std::cerr << "failed: " << chk.id << " — \"" << chk.anchor << "\"";
        if (!chk.detail.empty()) std::cerr << " (" << chk.detail << ")";
        std::cerr << "\n";
        for (const auto& [k, v] : chk.witness) std::cerr << "  witness " << k << " = " << v << "\n";
    }
}

template <ScalarField F>
int run_build(const Args& a, const FieldSpec& s) {
    CayleyAlgebra<F> c = obtain_algebra<F>(a, s, std::nullopt);
    return write_output(a, algebra_to_json(c).dump(2) + "\n");
}

template <ScalarField F>
Json basis_to_json(const MapSpace<F>& ms) {
    Json arr = Json::array();
    for (const Matrix<F>& m : basis_maps(ms)) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(detail::scalars_to_json(m.row(i)));
        arr.push_back(std::move(rows));
    }
    return arr;
}

template <ScalarField F>
int run_der(const Args& a, const FieldSpec& s, const std::optional<Json>& input) {
    CayleyAlgebra<F> c = obtain_algebra<F>(a, s, input);
    std::vector<CheckOutcome> axioms = check_axioms(c, SampleSpec{a.seed, a.samples + 16, true});
    if (!all_passed(axioms)) {
        std::cerr << "axiom check failed; refusing to analyze the table\n";
        print_failed_checks(axioms);
        return 1;
    }

    MapSpace<F> der = derivation_algebra(c);
    MapSpace<F> skew = skew_maps(c);
    MapSpace<F> locder = local_derivations(c);
    if (a.format == "json") {
        Json j;
        j["der"] = der.dim();
        j["so"] = skew.dim();
        j["locder"] = locder.dim();
        if (a.emit_basis) {
            j["der_basis"] = basis_to_json(der);
            j["so_basis"] = basis_to_json(skew);
            j["locder_basis"] = basis_to_json(locder);
        }
        return write_output(a, j.dump(2) + "\n");
    }
    std::string text = "der=" + std::to_string(der.dim()) + " so=" + std::to_string(skew.dim()) +
                       " locder=" + std::to_string(locder.dim()) + "\n";
    if (a.emit_basis) {
        auto append = [&](const char* name, const MapSpace<F>& ms) {
            std::size_t i = 0;
            for (const Matrix<F>& m : basis_maps(ms))
                text += std::string(name) + " basis " + std::to_string(i++) + ": " +
                        detail::matrix_text(m) + "\n";
        };
        append("der", der);
        append("so", skew);
        append("locder", locder);
    }
    return write_output(a, text);
}

template <ScalarField F>
int run_verify(const Args& a, const FieldSpec& s, const std::optional<Json>& input) {
    CayleyAlgebra<F> c = obtain_algebra<F>(a, s, input);
    Suite suite = *parse_suite(a.suite_text);
    std::vector<CheckOutcome> checks = run_suite(c, suite, a.seed, a.samples);
    ReportHeader header = report_header(c, a.seed);
    std::string text = a.format == "json" ? report_to_json(header, checks).dump(2) + "\n"
                                          : report_to_text(header, checks);
    int io = write_output(a, text);
    if (io != 0) return io;
    return all_passed(checks) ? 0 : 3;
}

int dispatch(const Args& a) {
    // Resolve the field: from the input file when given, else from --field.
    std::optional<Json> input;
    FieldSpec s = FieldSpec::rationals();
    try {
        if (!a.input.empty()) {
            input = load_json(a.input);
            s = field_from_json(input->at("field"));
        } else {
            s = FieldSpec::parse(a.field_text);
        }
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // A bad --field value is a usage error; a bad input file is not.
        return a.input.empty() ? 2 : 1;
    }

    try {
        if (s.kind() == FieldKind::rational) {
            if (a.command == "build") return run_build<Rational>(a, s);
            if (a.command == "der") return run_der<Rational>(a, s, input);
            return run_verify<Rational>(a, s, input);
        }
        if (a.command == "build") return run_build<GFp>(a, s);
        if (a.command == "der") return run_der<GFp>(a, s, input);
        return run_verify<GFp>(a, s, input);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    Args args;
    CLI::App app{"exact arithmetic for Cayley algebras and their derivation Lie algebras"};
    app.require_subcommand(1);

    CLI::Validator field_ok(
        [](std::string& v) -> std::string {
            try {
                FieldSpec::parse(v);
                return {};
            } catch (const cayley::error& e) {
                return e.what();
            }
        },
        "q|gf:<p>");
    CLI::Validator suite_ok(
        [](std::string& v) -> std::string {
            if (cayley::parse_suite(v)) return {};
            return "unknown suite '" + v + "'";
        },
        "SUITE");

    auto add_construction_flags = [&](CLI::App* cmd) {
        cmd->add_option("--field", args.field_text, "ground field: q or gf:<p>")
            ->check(field_ok)
            ->capture_default_str();
        cmd->add_option("--algebra", args.algebra, "construction: split or cd")
            ->check(CLI::IsMember({"split", "cd"}))
            ->capture_default_str();
        cmd->add_option("--mu", args.mu_text, "Cayley-Dickson parameters c1,c2,c3 (field-text)")
            ->capture_default_str();
    };
    auto add_io_flags = [&](CLI::App* cmd, bool with_input) {
        cmd->add_option("-o,--output", args.output, "write output to this file instead of stdout");
        cmd->add_option("--format", args.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        cmd->add_option("--seed", args.seed, "sampling seed")->capture_default_str();
        cmd->add_option("--samples", args.samples, "sampled instances per universal claim")
            ->capture_default_str();
        if (with_input)
            cmd->add_option("--input", args.input, "read the algebra from this JSON file ('-' for stdin)");
    };

    CLI::App* build = app.add_subcommand("build", "emit the structure-constant JSON of an algebra");
    add_construction_flags(build);
    add_io_flags(build, false);

    CLI::App* der = app.add_subcommand("der", "compute dim Der, dim so, dim LocDer");
    add_construction_flags(der);
    add_io_flags(der, true);
    der->add_flag("--emit-basis", args.emit_basis, "include basis matrices in the output");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites and emit a report");
    add_construction_flags(verify);
    add_io_flags(verify, true);
    verify->add_option("--suite", args.suite_text, "axioms|thm31|lemma43|thm41|lemma44|cor44|thm45|section5|all")
        ->check(suite_ok)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    args.command = app.get_subcommands().front()->get_name();
    return dispatch(args);
}
