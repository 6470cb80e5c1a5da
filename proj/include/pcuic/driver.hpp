#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcuic/context.hpp"
#include "pcuic/env.hpp"
#include "pcuic/error.hpp"

namespace pcuic {

struct DriverOptions {
    KernelOptions kernel;
    bool keep_going = false;
    bool trace_subtyping = false;
};

struct Diagnostic {
    /// "parse-error", or a type error label such as "block-ill-formed(arity)".
    std::string kind;
    std::string message;
    SourceLocation loc;
};

struct DeclOutcome {
    std::size_t index = 0;
    std::string kind;
    std::string name;
    bool ok = true;
    std::string output;
    std::optional<Diagnostic> error;
    std::int64_t time_us = 0;
};

enum class ReportStatus { ok, type_error, parse_error };

struct Report {
    std::string file;
    ReportStatus status = ReportStatus::ok;
    /// Set when the file failed to parse.
    std::optional<Diagnostic> parse_error;
    std::vector<DeclOutcome> declarations;
    /// Context after the last successfully processed declaration.
    Context context;

    int exit_code() const;
};

/// Parses and checks a whole source text, threading the context through.
Report check_source(std::string_view text, const std::string& file, const DriverOptions& options);
/// Reads `path`; an unreadable file is reported as a parse error.
Report check_file(const std::string& path, const DriverOptions& options);

nlohmann::json to_json(const Report& report, bool include_timings = true);
/// Human-readable diagnostics, one per failed declaration.
std::string format_diagnostics(const Report& report);

}  // namespace pcuic
