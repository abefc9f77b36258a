#pragma once

#include <array>
#include <vector>

#include "modvis/modsym.hpp"

namespace modvis {

// Two interchangeable routes for the Hecke action on Manin symbols:
//  - kParallel: Heilbronn-Merel matrix family for primes not dividing the
//    level, OpenMP over the generators; the production kernel.
//  - kSerialReference: coset representatives plus Manin's continued-fraction
//    trick, kept as the independent serial reference for tests and benches.
// Both routes use the degeneracy-coset sum for U_q at q | N.
enum class HeckeBackend { kParallel, kSerialReference };

// Heilbronn-Merel matrices of determinant n: a > c >= 0, d > b >= 0.
const std::vector<std::array<long, 4>>& heilbronn_merel(long n);

// Signed multiplicities of Manin symbols in T_p(generator), one list per free
// generator of the space; p prime.
using SymbolImages = std::vector<std::vector<std::pair<long, long>>>;
SymbolImages hecke_symbol_images(const ModSymSpace& s, long p, HeckeBackend backend);

// The serial reference route: coset representatives acting on paths, decomposed
// back into Manin symbols by continued fractions.
SymbolImages coset_symbol_images(const ModSymSpace& s, long p);

// T_n on y-coordinates (integer D x D); composite n via multiplicativity and
// the prime-power recursion.
IntegerMatrix hecke_matrix_y(const ModSymSpace& s, long n,
                             HeckeBackend backend = HeckeBackend::kParallel);

// T_n restricted to the cuspidal integral basis (z-coordinates).
IntegerMatrix hecke_matrix(const ModSymSpace& s, long n,
                           HeckeBackend backend = HeckeBackend::kParallel);

// Applies T_n to vectors in y-coordinates without materializing the matrix.
std::vector<std::vector<Rational>> hecke_apply_y(const ModSymSpace& s, long n,
                                                 const std::vector<std::vector<Rational>>& vs,
                                                 HeckeBackend backend = HeckeBackend::kParallel);

IntegerMatrix star_matrix_y(const ModSymSpace& s);

}  // namespace modvis
