#pragma once

#include "shintani/ideal.hpp"

namespace shintani {

// quadratic residue character of the residue field at an odd prime; the
// argument must be a unit at p
int legendre_at(const TotallyRealField& F, const Prime& p, const QVec& a);

// whether w is a square in the completion at p
bool is_local_square(const TotallyRealField& F, const Prime& p, const QVec& w);

// Hilbert symbol (a,b) at a finite place: +1 iff z^2 = a x^2 + b y^2 has a
// nontrivial local solution. Closed form at odd residue characteristic; at
// dyadic places a certified norm-equation search over a finite quotient.
int hilbert_symbol(const TotallyRealField& F, const Prime& p, const QVec& a, const QVec& b);

// real-place symbol: -1 iff both arguments are negative at the embedding
int hilbert_symbol_real(const TotallyRealField& F, std::size_t place, const QVec& a,
                        const QVec& b);

enum class SplitType { split, inert, ramified };

// splitting of p in the quadratic extension by a square root of d
SplitType split_type(const TotallyRealField& F, const Prime& p, const QVec& d);

}  // namespace shintani
