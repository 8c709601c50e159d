#pragma once

#include "kmtk/series.hpp"
#include "kmtk/tree.hpp"

#include <string>

namespace kmtk {

/// 2x2 matrix over truncated Laurent series acting on the tree. The vertex
/// (n, x) is the homothety class of the lattice spanned by the columns of
/// [[t^n, x], [0, 1]]. Under this dictionary upper unipotents act as
/// translations, diag(t^-1, t) as tau and diag(s, 1) as scaling by s.
struct LaurentMatrix
{
	Series a, b, c, d;

	static LaurentMatrix identity(FieldPtr f);
	static LaurentMatrix upper(Series x);             // [[1, x], [0, 1]]
	static LaurentMatrix lower(Series y);             // [[1, 0], [y, 1]]
	static LaurentMatrix diagonal(Series s, Series u); // diag(s, u)
	static LaurentMatrix tau_power(FieldPtr f, int m); // diag(t^-m, t^m)
	static LaurentMatrix weyl(FieldPtr f);            // [[0, 1], [-1, 0]]

	FieldPtr const &field() const { return a.field(); }
	Series det() const { return a * d - b * c; }
	/// Inverse via the adjugate; needs a determinant that is a monomial or
	/// known to `rel_precision`.
	LaurentMatrix inverse(int rel_precision = 64) const;
	std::string str() const;

	friend LaurentMatrix operator*(LaurentMatrix const &x, LaurentMatrix const &y);
};

/// Image of a vertex; raises PrecisionError when the entries are not known
/// far enough to locate it.
TreeVertex act(LaurentMatrix const &g, TreeVertex const &v);

} // namespace kmtk
