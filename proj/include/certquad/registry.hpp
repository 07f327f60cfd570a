#pragma once

// Built-in integrands with analytic partials and exact integrals.

#include <string>
#include <string_view>
#include <vector>

#include "certquad/core.hpp"

namespace certquad {

/// Unknown integrand name; the message lists the available ones.
class RegistryError : public Error {
public:
  using Error::Error;
};

struct RegistryEntry {
  std::string name;
  std::string formula;
};

/// const, bilinear, poly22, cubic, sinsin, expsum, recip, gauss.
const std::vector<RegistryEntry>& registry();
std::vector<std::string> registry_names();

/// The named integrand paired with rect: exact_integral is the integral
/// over rect. recip needs 1 + x + y > 0 on rect (DomainError otherwise).
Integrand make_integrand(std::string_view name, const Rectangle& rect);

/// The six non-polynomial-trivial smooth entries used for identity checks:
/// poly22, cubic, sinsin, expsum, recip, gauss.
std::vector<std::string> smooth_corpus_names();

}  // namespace certquad
