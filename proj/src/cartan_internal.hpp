#ifndef NSTRATA_CARTAN_INTERNAL_HPP
#define NSTRATA_CARTAN_INTERNAL_HPP

#include <cstddef>
#include <vector>

#include <nstrata/linalg.hpp>
#include <nstrata/rational.hpp>
#include <nstrata/root_datum.hpp>

namespace nstrata::detail
{

// Splits the Dynkin diagram of a validated Cartan block into connected
// components and names each one.
std::vector<SimpleFactor> classify_components(const IntMatrix &alpha, std::size_t l,
                                              const std::vector<Rational> &lengths);

} // namespace nstrata::detail

#endif
