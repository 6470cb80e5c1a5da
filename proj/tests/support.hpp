#pragma once

#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "pcuic/driver.hpp"
#include "pcuic/printer.hpp"

namespace pcuic {

inline void PrintTo(const Term& t, std::ostream* os) { *os << print(t); }

}  // namespace pcuic

namespace pcuic::testing {

inline std::string corpus_path(const std::string& name) {
    return std::string(PCUIC_SOURCE_DIR) + "/corpus/" + name;
}

/// Context after checking a corpus file; throws if the file does not check.
inline Context load_corpus(const std::string& name) {
    Report r = check_file(corpus_path(name), {});
    if (r.status != ReportStatus::ok)
        throw std::runtime_error(name + " does not check:\n" + format_diagnostics(r));
    return r.context;
}

inline Context load_source(const std::string& text) {
    Report r = check_source(text, "<test>", {});
    if (r.status != ReportStatus::ok)
        throw std::runtime_error("source does not check:\n" + format_diagnostics(r));
    return r.context;
}

/// Block declaration for lists at universe level `i` under the name `name`.
inline std::string list_block(const std::string& name, unsigned i) {
    std::string ty = "Type@{" + std::to_string(i) + "}";
    return "inductive " + name + " params 1 { list : forall A : " + ty + ", " + ty +
           " := nil : forall A : " + ty + ", list A; cons : forall A : " + ty +
           ", A -> list A -> list A }.\n";
}

inline const char* nat_block() {
    return "inductive N params 0 { nat : Type@{0} := zero : nat; succ : nat -> nat }.\n"
           "def add : nat -> nat -> nat := fun n m : nat => "
           "Elim(n; N.nat; fun _ : nat => nat; m, fun p r : nat => succ r).\n";
}

inline int pick(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

constexpr int property_cases = 500;

}  // namespace pcuic::testing
