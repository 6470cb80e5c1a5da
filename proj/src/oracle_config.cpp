#include "pcuic/oracle_config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcuic/conversion.hpp"
#include "pcuic/driver.hpp"
#include "pcuic/model_oracle.hpp"
#include "pcuic/surface.hpp"
#include "pcuic/typecheck.hpp"

namespace pcuic {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_count(const std::string& s, int line) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (s.empty() || pos != s.size() || s[0] == '-')
        throw ParseError("expected a natural number, got '" + s + "'", {line, 1});
    return static_cast<std::size_t>(v);
}

}  // namespace

OracleConfig parse_oracle_config(std::string_view text) {
    OracleConfig cfg;
    bool have_file = false, have_block = false, have_depth = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string l = trim(raw);
        if (l.empty() || l[0] == '#') continue;
        std::size_t eq = l.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", {line, 1});
        std::string key = trim(std::string_view(l).substr(0, eq));
        std::string value = trim(std::string_view(l).substr(eq + 1));
        if (key == "file") {
            cfg.file = value;
            have_file = true;
        } else if (key == "block") {
            cfg.block = value;
            have_block = true;
        } else if (key == "depth") {
            cfg.depth = parse_count(value, line);
            have_depth = true;
        } else if (key == "param") {
            std::size_t sp = value.find(' ');
            std::string mode = value.substr(0, sp);
            std::string rest = sp == std::string::npos ? "" : trim(std::string_view(value).substr(sp));
            OracleParam p;
            if (mode == "enum") {
                p.kind = OracleParam::Kind::enumeration;
                p.count = parse_count(rest, line);
            } else if (mode == "term" && !rest.empty()) {
                p.kind = OracleParam::Kind::term;
                p.expr = rest;
            } else {
                throw ParseError("param must be 'enum N' or 'term EXPR'", {line, 1});
            }
            cfg.params.push_back(std::move(p));
        } else if (key == "agree") {
            if (value.empty()) throw ParseError("empty agreement term", {line, 1});
            cfg.agree.push_back(value);
        } else {
            throw ParseError("unknown key '" + key + "'", {line, 1});
        }
    }
    if (!have_file) throw ParseError("missing 'file'", {line, 1});
    if (!have_block) throw ParseError("missing 'block'", {line, 1});
    if (!have_depth) throw ParseError("missing 'depth'", {line, 1});
    return cfg;
}

OracleRun run_oracle(const OracleConfig& config, const std::string& base_dir,
                     const KernelOptions& options) {
    OracleRun run;
    std::filesystem::path source = config.file;
    if (source.is_relative()) source = std::filesystem::path(base_dir) / source;

    DriverOptions dopts;
    dopts.kernel = options;
    Report report = check_file(source.string(), dopts);
    if (report.status != ReportStatus::ok) {
        run.exit_code = 2;
        run.diagnostics = format_diagnostics(report);
        return run;
    }
    const Context& ctx = report.context;
    if (!ctx.find_block(config.block)) {
        run.exit_code = 2;
        run.diagnostics = "unknown block '" + config.block + "'\n";
        return run;
    }

    std::ostringstream out;
    Fragment fragment(ctx, config.depth);
    try {
        std::vector<SetValue> params;
        for (const auto& p : config.params) {
            if (p.kind == OracleParam::Kind::enumeration) {
                std::vector<SetValue> atoms;
                for (std::size_t i = 0; i < p.count; ++i)
                    atoms.push_back(SetValue::tag(static_cast<std::uint32_t>(i)));
                params.push_back(SetValue::fin(std::move(atoms)));
            } else {
                params.push_back(fragment.denote(parse_term(p.expr, ctx)));
            }
        }
        const BlockInterp& interp = fragment.block(config.block, params);
        out << "block " << config.block << " depth " << config.depth << "\n";
        for (std::size_t a = 0; a < interp.stages.stages.size(); ++a)
            out << "stage " << a << ": " << interp.stages.stages[a].size() << "\n";
        out << "closed: " << (interp.stages.closed ? "yes" : "no") << "\n";
    } catch (const OracleError& e) {
        out << e.label() << ": " << e.what() << "\n";
        run.output = out.str();
        run.exit_code = 1;
        return run;
    } catch (const ParseError& e) {
        run.exit_code = 2;
        run.diagnostics = std::string("param: ") + e.what() + "\n";
        return run;
    }

    for (const auto& expr : config.agree) {
        try {
            Term t = parse_term(expr, ctx);
            Context work = ctx;
            Env env(work, options);
            infer(env, t);
            Term n = normalize(env, t);
            SetValue oracle = fragment.denote(t);
            SetValue kernel = fragment.denote(n);
            if (oracle == kernel) {
                out << "agree: " << render(oracle) << " = " << render(kernel) << "\n";
            } else {
                out << "disagree: " << expr << ": oracle " << render(oracle) << ", kernel "
                    << render(kernel) << "\n";
                run.exit_code = 1;
            }
        } catch (const OracleError& e) {
            out << e.label() << ": " << expr << ": " << e.what() << "\n";
            run.exit_code = 1;
        } catch (const ParseError& e) {
            run.diagnostics += "agree '" + expr + "': " + e.what() + "\n";
            run.exit_code = 2;
        } catch (const TypeError& e) {
            run.diagnostics += "agree '" + expr + "': " + e.kind_label() + ": " + e.what() + "\n";
            run.exit_code = 2;
        }
        if (run.exit_code == 2) break;
    }
    run.output = out.str();
    return run;
}

OracleRun run_oracle_file(const std::string& path, const KernelOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return OracleRun{2, "", path + ": cannot open oracle config\n"};
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        OracleConfig cfg = parse_oracle_config(buf.str());
        return run_oracle(cfg, std::filesystem::path(path).parent_path().string(), options);
    } catch (const ParseError& e) {
        return OracleRun{2, "",
                         path + ":" + std::to_string(e.location().line) + ": error: " + e.what() + "\n"};
    }
}

}  // namespace pcuic
