#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcuic/conversion.hpp"
#include "pcuic/cumulativity.hpp"
#include "pcuic/driver.hpp"
#include "pcuic/oracle_config.hpp"
#include "pcuic/printer.hpp"
#include "pcuic/surface.hpp"
#include "pcuic/typecheck.hpp"

namespace {

using namespace pcuic;

struct Flags {
    bool keep_going = false;
    bool json = false;
    std::uint64_t fuel = KernelOptions{}.fuel;
    bool strict_app = false;
    bool trace_subtyping = false;
};

DriverOptions driver_options(const Flags& f) {
    DriverOptions o;
    o.kernel.fuel = f.fuel;
    o.kernel.strict_app = f.strict_app;
    o.keep_going = f.keep_going;
    o.trace_subtyping = f.trace_subtyping;
    return o;
}

void emit_report(const Report& report, const Flags& flags) {
    if (flags.json) {
        std::cout << to_json(report).dump(2) << "\n";
    } else {
        for (const auto& d : report.declarations)
            if (d.ok && !d.output.empty()) std::cout << d.output << "\n";
    }
    std::cerr << format_diagnostics(report);
}

int cmd_check(const std::string& path, const Flags& flags) {
    Report report = check_file(path, driver_options(flags));
    emit_report(report, flags);
    return report.exit_code();
}

/// Loads the file and runs `query` on its final context.
template <class Query>
int with_file(const std::string& path, const Flags& flags, Query query) {
    Report report = check_file(path, driver_options(flags));
    if (report.status != ReportStatus::ok) {
        std::cerr << format_diagnostics(report);
        return report.exit_code();
    }
    Context& ctx = report.context;
    Env env(ctx, driver_options(flags).kernel);
    try {
        return query(env);
    } catch (const ParseError& e) {
        std::cerr << "<expr>:" << e.location().line << ":" << e.location().column
                  << ": error[parse-error]: " << e.what() << "\n";
        return 2;
    } catch (const TypeError& e) {
        std::cerr << "<expr>: error[" << e.kind_label() << "]: " << e.what() << "\n";
        return 1;
    }
}

int cmd_eval(const std::string& path, const std::string& expr, const Flags& flags) {
    return with_file(path, flags, [&](Env& env) {
        Term t = parse_term(expr, env.ctx());
        infer(env, t);
        std::cout << print(normalize(env, t), &env.ctx()) << "\n";
        return 0;
    });
}

int cmd_conv(const std::string& path, const std::vector<std::string>& exprs, const Flags& flags) {
    return with_file(path, flags, [&](Env& env) {
        Term a = parse_term(exprs[0], env.ctx());
        Term b = parse_term(exprs[1], env.ctx());
        infer(env, a);
        infer(env, b);
        std::cout << (conv(env, a, b) ? "true" : "false") << "\n";
        return 0;
    });
}

int cmd_sub(const std::string& path, const std::vector<std::string>& exprs, const Flags& flags) {
    return with_file(path, flags, [&](Env& env) {
        Term a = parse_term(exprs[0], env.ctx());
        Term b = parse_term(exprs[1], env.ctx());
        infer_sort(env, a);
        infer_sort(env, b);
        SubtypeVerdict v = subtype(env, a, b);
        std::cout << (v.holds ? "true" : "false");
        if (flags.trace_subtyping) {
            if (v.holds) {
                std::cout << " [";
                for (std::size_t i = 0; i < v.trace.size(); ++i)
                    std::cout << (i ? ", " : "") << v.trace[i];
                std::cout << "]";
            } else {
                std::cout << " (" << to_string(v.failure) << ")";
            }
        }
        std::cout << "\n";
        return 0;
    });
}

int cmd_oracle(const std::string& path, const Flags& flags) {
    OracleRun run = run_oracle_file(path, driver_options(flags).kernel);
    std::cout << run.output;
    if (!run.diagnostics.empty()) std::cerr << run.diagnostics;
    return run.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pcuic: kernel for the predicative calculus of cumulative inductive constructions"};
    app.require_subcommand(1);
    Flags flags;
    app.add_flag("--keep-going", flags.keep_going, "Continue after a failed declaration");
    app.add_flag("--json", flags.json, "Print the check report as JSON");
    app.add_option("--fuel", flags.fuel, "Reduction step budget per query")->check(CLI::PositiveNumber);
    app.add_flag("--strict-app", flags.strict_app, "Check application arguments by conversion only");
    app.add_flag("--trace-subtyping", flags.trace_subtyping, "Print the rules used by subtyping queries");

    std::string file;
    std::vector<std::string> exprs;

    auto* check = app.add_subcommand("check", "Type check a .pcuic file");
    check->add_option("FILE", file)->required();
    auto* eval = app.add_subcommand("eval", "Normalize an expression in a file's context");
    eval->add_option("FILE", file)->required();
    eval->add_option("-e", exprs, "Expression")->required()->expected(1);
    auto* convc = app.add_subcommand("conv", "Decide judgemental equality of two expressions");
    convc->add_option("FILE", file)->required();
    convc->add_option("-e", exprs, "Expressions")->required()->expected(2);
    auto* sub = app.add_subcommand("sub", "Decide subtyping between two types");
    sub->add_option("FILE", file)->required();
    sub->add_option("-e", exprs, "Types")->required()->expected(2);
    auto* oracle = app.add_subcommand("oracle", "Run the set-theoretic oracle on a config file");
    oracle->add_option("CONFIG", file)->required();

    for (auto* s : {check, eval, convc, sub, oracle}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*check) return cmd_check(file, flags);
    if (*eval) return cmd_eval(file, exprs.at(0), flags);
    if (*convc) return cmd_conv(file, exprs, flags);
    if (*sub) return cmd_sub(file, exprs, flags);
    return cmd_oracle(file, flags);
}
