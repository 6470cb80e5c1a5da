#pragma once

#include <cstdint>
#include <string>

#include "pcuic/context.hpp"

namespace pcuic {

struct KernelOptions {
    /// Maximum number of head reduction / comparison steps per top-level query.
    std::uint64_t fuel = 1'000'000;
    /// Check application arguments by conversion instead of subtyping.
    bool strict_app = false;
};

/*
 * Mutable working state of one kernel query: the context (extended and
 * shrunk as the checker goes under binders) and the step budget.
 */
class Env {
public:
    explicit Env(Context& ctx, KernelOptions options = {}) : ctx_(&ctx), options_(options) {}

    Context& ctx() { return *ctx_; }
    const Context& ctx() const { return *ctx_; }
    const KernelOptions& options() const { return options_; }

    /// Consumes one step; throws TypeError(fuel_exhausted) past the budget.
    void tick();
    std::uint64_t steps() const { return steps_; }

private:
    Context* ctx_;
    KernelOptions options_;
    std::uint64_t steps_ = 0;
};

/// Pushes a hypothesis for the lifetime of the guard.
class ScopedHyp {
public:
    ScopedHyp(Env& env, std::string name, Term type) : env_(env) {
        env_.ctx().push_hyp(std::move(name), std::move(type));
    }
    ~ScopedHyp() { env_.ctx().pop(); }
    ScopedHyp(const ScopedHyp&) = delete;
    ScopedHyp& operator=(const ScopedHyp&) = delete;

private:
    Env& env_;
};

}  // namespace pcuic
