#include "pcuic/env.hpp"

#include "pcuic/error.hpp"

namespace pcuic {

void Env::tick() {
    if (++steps_ > options_.fuel)
        throw TypeError(ErrorKind::fuel_exhausted,
                        "reduction did not finish within " + std::to_string(options_.fuel) +
                            " steps (term may diverge or be ill-typed)");
}

}  // namespace pcuic
