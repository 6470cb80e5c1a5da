#include "pcuic/driver.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "pcuic/conversion.hpp"
#include "pcuic/cumulativity.hpp"
#include "pcuic/printer.hpp"
#include "pcuic/surface.hpp"
#include "pcuic/typecheck.hpp"

namespace pcuic {

int Report::exit_code() const {
    switch (status) {
        case ReportStatus::ok: return 0;
        case ReportStatus::type_error: return 1;
        case ReportStatus::parse_error: return 2;
    }
    return 2;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out;
}

/// Runs one declaration against `ctx`; throws TypeError or ParseError.
std::string run_declaration(const Declaration& d, Context& ctx, const DriverOptions& options) {
    const KernelOptions& k = options.kernel;
    switch (d.kind) {
        case Declaration::Kind::axiom: {
            Term type = resolve(*d.type, ctx);
            extend_checked(ctx, Hyp{d.name, type}, k);
            return "";
        }
        case Declaration::Kind::def: {
            Term type = resolve(*d.type, ctx);
            Term body = resolve(*d.term, ctx);
            extend_checked(ctx, Def{d.name, body, type}, k);
            return "";
        }
        case Declaration::Kind::inductive: {
            InductiveBlock block = resolve_block(d, ctx);
            extend_checked(ctx, BlockEntry{d.name, std::make_shared<const InductiveBlock>(std::move(block))}, k);
            return "";
        }
        case Declaration::Kind::check: {
            Term t = resolve(*d.term, ctx);
            Context work = ctx;
            Env env(work, k);
            Term type = infer(env, t);
            if (d.type) {
                Term expected = resolve(*d.type, ctx);
                infer_sort(env, expected);
                check(env, t, expected);
            }
            return print(t, &ctx) + " : " + print(normalize(env, type), &ctx);
        }
        case Declaration::Kind::eval: {
            Term t = resolve(*d.term, ctx);
            Context work = ctx;
            Env env(work, k);
            infer(env, t);
            return print(normalize(env, t), &ctx);
        }
        case Declaration::Kind::conv: {
            Term a = resolve(*d.term, ctx);
            Term b = resolve(*d.rhs, ctx);
            Context work = ctx;
            Env env(work, k);
            infer(env, a);
            infer(env, b);
            return print(a, &ctx) + " == " + print(b, &ctx) + " : " +
                   (conv(env, a, b) ? "true" : "false");
        }
        case Declaration::Kind::sub: {
            Term a = resolve(*d.term, ctx);
            Term b = resolve(*d.rhs, ctx);
            Context work = ctx;
            Env env(work, k);
            infer_sort(env, a);
            infer_sort(env, b);
            SubtypeVerdict v = subtype(env, a, b);
            std::string out = print(a, &ctx) + " <= " + print(b, &ctx) + " : " +
                              (v.holds ? "true" : "false");
            if (options.trace_subtyping) {
                if (v.holds)
                    out += " [" + join(v.trace) + "]";
                else
                    out += " (" + std::string(to_string(v.failure)) + ")";
            }
            return out;
        }
    }
    return "";
}

}  // namespace

Report check_source(std::string_view text, const std::string& file, const DriverOptions& options) {
    Report report;
    report.file = file;
    SourceFile source;
    try {
        source = parse(text);
    } catch (const ParseError& e) {
        report.status = ReportStatus::parse_error;
        report.parse_error = Diagnostic{"parse-error", e.what(), e.location()};
        return report;
    }
    for (std::size_t i = 0; i < source.declarations.size(); ++i) {
        const Declaration& d = source.declarations[i];
        DeclOutcome out;
        out.index = i;
        out.kind = std::string(to_string(d.kind));
        out.name = d.name;
        auto start = std::chrono::steady_clock::now();
        try {
            out.output = run_declaration(d, report.context, options);
        } catch (const TypeError& e) {
            out.ok = false;
            out.error = Diagnostic{e.kind_label(), e.what(), d.loc};
        } catch (const ParseError& e) {
            out.ok = false;
            out.error = Diagnostic{std::string(to_string(ErrorKind::unbound_variable)), e.what(),
                                   e.location()};
        }
        out.time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        const bool failed = !out.ok;
        report.declarations.push_back(std::move(out));
        if (failed) {
            report.status = ReportStatus::type_error;
            if (!options.keep_going) break;
        }
    }
    return report;
}

Report check_file(const std::string& path, const DriverOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        Report report;
        report.file = path;
        report.status = ReportStatus::parse_error;
        report.parse_error = Diagnostic{"parse-error", "cannot open file", {}};
        return report;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return check_source(buf.str(), path, options);
}

namespace {

nlohmann::json diagnostic_json(const Diagnostic& d) {
    return {{"kind", d.kind},
            {"message", d.message},
            {"line", d.loc.line},
            {"column", d.loc.column}};
}

const char* status_name(ReportStatus s) {
    switch (s) {
        case ReportStatus::ok: return "ok";
        case ReportStatus::type_error: return "error";
        case ReportStatus::parse_error: return "parse-error";
    }
    return "?";
}

}  // namespace

nlohmann::json to_json(const Report& report, bool include_timings) {
    nlohmann::json decls = nlohmann::json::array();
    for (const auto& d : report.declarations) {
        nlohmann::json j = {{"index", d.index},
                            {"kind", d.kind},
                            {"name", d.name},
                            {"status", d.ok ? "ok" : "error"},
                            {"output", d.output}};
        j["error"] = d.error ? diagnostic_json(*d.error) : nlohmann::json(nullptr);
        if (include_timings) j["time_us"] = d.time_us;
        decls.push_back(std::move(j));
    }
    nlohmann::json out = {{"file", report.file},
                          {"status", status_name(report.status)},
                          {"declarations", std::move(decls)}};
    out["error"] = report.parse_error ? diagnostic_json(*report.parse_error) : nlohmann::json(nullptr);
    return out;
}

std::string format_diagnostics(const Report& report) {
    std::string out;
    auto line = [&](const Diagnostic& d) {
        out += report.file + ":" + std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) +
               ": error[" + d.kind + "]: " + d.message + "\n";
    };
    if (report.parse_error) line(*report.parse_error);
    for (const auto& d : report.declarations)
        if (d.error) line(*d.error);
    return out;
}

}  // namespace pcuic
