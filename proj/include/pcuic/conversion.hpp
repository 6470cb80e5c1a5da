#pragma once

#include <optional>
#include <vector>

#include "pcuic/context.hpp"
#include "pcuic/env.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

/// Why an eliminator at the head did not reduce.
enum class IotaStuck {
    none,
    not_a_constructor,
    unrelated_block,
    partial_constructor,
};

struct WhnfResult {
    Term head;
    std::vector<Term> spine;
    IotaStuck stuck = IotaStuck::none;

    Term term() const { return mk_apps(head, spine); }
};

WhnfResult whnf(Env& env, const Term& t);
WhnfResult whnf(const Context& ctx, const Term& t, KernelOptions options = {});
Term whnf_term(Env& env, const Term& t);

/// Full normal form, reducing under binders.
Term normalize(Env& env, const Term& t);
Term normalize(const Context& ctx, const Term& t, KernelOptions options = {});

/// Judgemental equality.
bool conv(Env& env, const Term& t, const Term& u);
bool conv(const Context& ctx, const Term& t, const Term& u, KernelOptions options = {});

}  // namespace pcuic
