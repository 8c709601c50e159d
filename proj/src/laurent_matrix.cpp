#include "kmtk/laurent_matrix.hpp"

#include "kmtk/error.hpp"

namespace kmtk {

LaurentMatrix LaurentMatrix::identity(FieldPtr f)
{
	return {Series::one(f), Series(f), Series(f), Series::one(f)};
}

LaurentMatrix LaurentMatrix::upper(Series x)
{
	auto f = x.field();
	return {Series::one(f), std::move(x), Series(f), Series::one(f)};
}

LaurentMatrix LaurentMatrix::lower(Series y)
{
	auto f = y.field();
	return {Series::one(f), Series(f), std::move(y), Series::one(f)};
}

LaurentMatrix LaurentMatrix::diagonal(Series s, Series u)
{
	auto f = s.field();
	return {std::move(s), Series(f), Series(f), std::move(u)};
}

LaurentMatrix LaurentMatrix::tau_power(FieldPtr f, int m)
{
	return {Series::monomial(f, 1, -m), Series(f), Series(f), Series::monomial(f, 1, m)};
}

LaurentMatrix LaurentMatrix::weyl(FieldPtr f)
{
	return {Series(f), Series::one(f), Series::monomial(f, f->neg(1), 0), Series(f)};
}

LaurentMatrix LaurentMatrix::inverse(int rel_precision) const
{
	Series di = det().inverse(rel_precision);
	return {d * di, -b * di, -c * di, a * di};
}

std::string LaurentMatrix::str() const
{
	return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
}

LaurentMatrix operator*(LaurentMatrix const &x, LaurentMatrix const &y)
{
	return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
	        x.c * y.b + x.d * y.d};
}

TreeVertex act(LaurentMatrix const &g, TreeVertex const &v)
{
	auto const &f = g.field();
	Series tn = Series::monomial(f, 1, v.h);
	// g [[t^n, x], [0, 1]] = [[A, B], [C, D]].
	Series A = g.a * tn, B = g.a * v.x + g.b;
	Series C = g.c * tn, D = g.c * v.x + g.d;
	Series det = A * D - B * C;
	if (det.valuation() == Series::kInfiniteValuation)
		throw PrecisionError("determinant not resolved within the precision window");
	int vdet = det.valuation();

	// Column reduction: the column whose lower entry has least valuation
	// becomes (x', 1) after scaling. Ties go to D.
	bool kc = C.valuation() != Series::kInfiniteValuation;
	bool kd = D.valuation() != Series::kInfiniteValuation;
	bool use_d;
	if (kd && (kc ? D.valuation() <= C.valuation() : D.valuation() <= C.valuation_lower_bound()))
		use_d = true;
	else if (kc && (kd || C.valuation() < D.valuation_lower_bound()))
		use_d = false;
	else
		throw PrecisionError("lower row not resolved within the precision window");
	Series const &top = use_d ? B : A;
	Series const &bottom = use_d ? D : C;
	int n = vdet - 2 * bottom.valuation();
	return TreeVertex(n, Series::divide(top, bottom, n));
}

} // namespace kmtk
