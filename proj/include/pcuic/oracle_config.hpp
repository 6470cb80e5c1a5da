#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pcuic/env.hpp"

namespace pcuic {

struct OracleParam {
    enum class Kind { enumeration, term };

    Kind kind = Kind::enumeration;
    /// enumeration: number of distinct atoms.
    std::size_t count = 0;
    /// term: expression denoting a finite set.
    std::string expr;
};

struct OracleConfig {
    std::string file;
    std::string block;
    std::size_t depth = 0;
    std::vector<OracleParam> params;
    std::vector<std::string> agree;
};

/// Line-oriented `key = value` format; throws ParseError on malformed input.
OracleConfig parse_oracle_config(std::string_view text);

struct OracleRun {
    /// 0: all agreements hold; 1: disagreement or oracle error; 2: bad config or source.
    int exit_code = 0;
    std::string output;
    std::string diagnostics;
};

/// `base_dir` resolves a relative `file` entry.
OracleRun run_oracle(const OracleConfig& config, const std::string& base_dir,
                     const KernelOptions& options);
OracleRun run_oracle_file(const std::string& path, const KernelOptions& options);

}  // namespace pcuic
