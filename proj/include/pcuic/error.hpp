#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcuic/term.hpp"

namespace pcuic {

/// 1-based source position; line 0 means "unknown".
struct SourceLocation {
    int line = 0;
    int column = 0;
};

enum class BlockErrorKind {
    duplicate_name,
    parameter_telescope,
    parametricity,
    arity,
    mixed_sorts,
    not_a_constructor,
    strict_positivity,
    ill_typed,
};

std::string_view to_string(BlockErrorKind kind);

struct BlockError {
    BlockErrorKind kind;
    std::string member;
    std::string message;
};

enum class ErrorKind {
    unbound_variable,
    duplicate_name,
    not_a_sort,
    not_a_function,
    app_mismatch,
    type_mismatch,
    block_ill_formed,
    elim_motive_mismatch,
    elim_case_mismatch,
    elim_scrutinee_mismatch,
    universe_inconsistency,
    fuel_exhausted,
};

std::string_view to_string(ErrorKind kind);

class TypeError : public std::runtime_error {
public:
    TypeError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    TypeError(ErrorKind kind, const std::string& message, Term expected, Term actual)
        : std::runtime_error(message),
          kind_(kind),
          expected_(std::move(expected)),
          actual_(std::move(actual)) {}

    explicit TypeError(const BlockError& error);

    ErrorKind kind() const { return kind_; }
    /// Present only for block_ill_formed.
    const std::optional<BlockError>& block_error() const { return block_; }
    const std::optional<Term>& expected() const { return expected_; }
    const std::optional<Term>& actual() const { return actual_; }

    const SourceLocation& location() const { return location_; }
    void set_location(SourceLocation loc) { location_ = loc; }

    /// Position of the offending entry when raised by context validation.
    const std::optional<std::size_t>& entry_index() const { return entry_; }
    void set_entry_index(std::size_t index) { entry_ = index; }

    /// "block-ill-formed(strict-positivity)" style label.
    std::string kind_label() const;

private:
    ErrorKind kind_;
    std::optional<BlockError> block_;
    std::optional<Term> expected_;
    std::optional<Term> actual_;
    SourceLocation location_;
    std::optional<std::size_t> entry_;
};

/// Lexical, syntax or name-resolution failure in surface text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceLocation loc)
        : std::runtime_error(message), location_(loc) {}

    const SourceLocation& location() const { return location_; }

private:
    SourceLocation location_;
};

}  // namespace pcuic
