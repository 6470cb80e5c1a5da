#include "pcuic/error.hpp"

namespace pcuic {

std::string_view to_string(BlockErrorKind kind) {
    switch (kind) {
        case BlockErrorKind::duplicate_name: return "duplicate-name";
        case BlockErrorKind::parameter_telescope: return "parameter-telescope";
        case BlockErrorKind::parametricity: return "parametricity";
        case BlockErrorKind::arity: return "arity";
        case BlockErrorKind::mixed_sorts: return "mixed-sorts";
        case BlockErrorKind::not_a_constructor: return "not-a-constructor";
        case BlockErrorKind::strict_positivity: return "strict-positivity";
        case BlockErrorKind::ill_typed: return "ill-typed";
    }
    return "?";
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::unbound_variable: return "unbound-variable";
        case ErrorKind::duplicate_name: return "duplicate-name";
        case ErrorKind::not_a_sort: return "not-a-sort";
        case ErrorKind::not_a_function: return "not-a-function";
        case ErrorKind::app_mismatch: return "app-mismatch";
        case ErrorKind::type_mismatch: return "type-mismatch";
        case ErrorKind::block_ill_formed: return "block-ill-formed";
        case ErrorKind::elim_motive_mismatch: return "elim-motive-mismatch";
        case ErrorKind::elim_case_mismatch: return "elim-case-mismatch";
        case ErrorKind::elim_scrutinee_mismatch: return "elim-scrutinee-mismatch";
        case ErrorKind::universe_inconsistency: return "universe-inconsistency";
        case ErrorKind::fuel_exhausted: return "fuel-exhausted";
    }
    return "?";
}

TypeError::TypeError(const BlockError& error)
    : std::runtime_error(error.member.empty() ? error.message
                                               : error.member + ": " + error.message),
      kind_(ErrorKind::block_ill_formed),
      block_(error) {}

std::string TypeError::kind_label() const {
    std::string out(to_string(kind_));
    if (block_) out += "(" + std::string(to_string(block_->kind)) + ")";
    return out;
}

}  // namespace pcuic
