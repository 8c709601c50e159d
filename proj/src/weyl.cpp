#include "kmtk/weyl.hpp"

#include "kmtk/error.hpp"

#include <algorithm>

namespace kmtk {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b)
{
	std::int64_t r;
	if (__builtin_add_overflow(a, b, &r))
		throw ResourceError("integer overflow in reflection representation", -1);
	return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b)
{
	std::int64_t r;
	if (__builtin_mul_overflow(a, b, &r))
		throw ResourceError("integer overflow in reflection representation", -1);
	return r;
}

// M <- S_i M. Only row i changes.
void left_reflect(Gcm const &gcm, IntMatrix &m, int i)
{
	int n = gcm.rank();
	for (int c = 0; c < n; ++c)
	{
		std::int64_t v = -m(i, c);
		for (int j = 0; j < n; ++j)
			if (j != i && gcm(i, j) != 0)
				v = add_checked(v, mul_checked(-gcm(i, j), m(j, c)));
		m(i, c) = v;
	}
}

// M <- M S_i. Column j picks up -A[i][j] times column i.
void right_reflect(Gcm const &gcm, IntMatrix &m, int i)
{
	int n = gcm.rank();
	for (int j = 0; j < n; ++j)
	{
		if (j == i || gcm(i, j) == 0)
			continue;
		for (int r = 0; r < n; ++r)
			m(r, j) = add_checked(m(r, j), mul_checked(-gcm(i, j), m(r, i)));
	}
	for (int r = 0; r < n; ++r)
		m(r, i) = -m(r, i);
}

// Sign of column j of M S_i, without forming the product.
int reflected_column_sign(Gcm const &gcm, IntMatrix const &m, int i, int j, std::vector<std::int64_t> &buf)
{
	int n = gcm.rank();
	buf.resize(std::size_t(n));
	for (int r = 0; r < n; ++r)
		buf[std::size_t(r)] =
		    j == i ? -m(r, i) : add_checked(m(r, j), mul_checked(-gcm(i, j), m(r, i)));
	return root_sign(buf);
}

int column_sign(IntMatrix const &m, int j, std::vector<std::int64_t> &buf)
{
	int n = m.size();
	buf.resize(std::size_t(n));
	for (int r = 0; r < n; ++r)
		buf[std::size_t(r)] = m(r, j);
	return root_sign(buf);
}

void check_index(Gcm const &gcm, int i)
{
	require(i >= 0 && i < gcm.rank(), "generator index " + std::to_string(i) +
	                                      " out of range for rank " +
	                                      std::to_string(gcm.rank()));
}

} // namespace

IntMatrix IntMatrix::identity(int n)
{
	IntMatrix m(n);
	for (int i = 0; i < n; ++i)
		m(i, i) = 1;
	return m;
}

std::vector<std::int64_t> IntMatrix::column(int j) const
{
	std::vector<std::int64_t> c(static_cast<std::size_t>(n_));
	for (int i = 0; i < n_; ++i)
		c[std::size_t(i)] = (*this)(i, j);
	return c;
}

bool IntMatrix::is_identity() const
{
	for (int i = 0; i < n_; ++i)
		for (int j = 0; j < n_; ++j)
			if ((*this)(i, j) != (i == j ? 1 : 0))
				return false;
	return true;
}

IntMatrix operator*(IntMatrix const &x, IntMatrix const &y)
{
	int n = x.size();
	IntMatrix r(n);
	for (int i = 0; i < n; ++i)
		for (int k = 0; k < n; ++k)
		{
			auto xik = x(i, k);
			if (xik == 0)
				continue;
			for (int j = 0; j < n; ++j)
				r(i, j) = add_checked(r(i, j), mul_checked(xik, y(k, j)));
		}
	return r;
}

std::size_t IntMatrix::hash() const
{
	std::size_t h = std::size_t(n_);
	for (auto v : a_)
		h = h * 1000003u ^ std::hash<std::int64_t>{}(v);
	return h;
}

RootVector RootVector::operator-() const
{
	RootVector r = *this;
	for (auto &c : r.coords)
		c = -c;
	r.positive = !positive;
	return r;
}

RootVector RootVector::simple(int n, int i)
{
	RootVector r;
	r.coords.assign(std::size_t(n), 0);
	r.coords[std::size_t(i)] = 1;
	return r;
}

int root_sign(std::span<std::int64_t const> coords)
{
	bool pos = false, neg = false;
	for (auto c : coords)
	{
		pos |= c > 0;
		neg |= c < 0;
	}
	if (pos == neg)
		throw ModelError("vector is not a real root (mixed or zero signs)");
	return pos ? 1 : -1;
}

WeylElement identity_element(Gcm const &gcm)
{
	return {IntMatrix::identity(gcm.rank()), {}};
}

WeylElement simple_reflection(Gcm const &gcm, int i)
{
	check_index(gcm, i);
	WeylElement s = identity_element(gcm);
	right_reflect(gcm, s.matrix, i);
	s.word = {i};
	return s;
}

WeylElement normal_form(Gcm const &gcm, std::span<int const> word)
{
	int n = gcm.rank();
	IntMatrix w = IntMatrix::identity(n), winv = IntMatrix::identity(n);
	for (int i : word)
	{
		check_index(gcm, i);
		right_reflect(gcm, w, i);
		left_reflect(gcm, winv, i);
	}

	// Peel off the smallest left descent until nothing is left.
	WeylElement out{w, {}};
	std::vector<std::int64_t> buf;
	while (!w.is_identity())
	{
		int descent = -1;
		for (int i = 0; i < n && descent < 0; ++i)
			if (column_sign(winv, i, buf) < 0)
				descent = i;
		if (descent < 0 || out.word.size() >= word.size())
			throw ModelError("descent algorithm failed to terminate");
		out.word.push_back(descent);
		left_reflect(gcm, w, descent);
		right_reflect(gcm, winv, descent);
	}
	return out;
}

WeylElement multiply(Gcm const &gcm, WeylElement const &x, WeylElement const &y)
{
	std::vector<int> word = x.word;
	word.insert(word.end(), y.word.begin(), y.word.end());
	return normal_form(gcm, word);
}

Order order_of_product(Gcm const &gcm, int i, int j, int cutoff)
{
	check_index(gcm, i);
	check_index(gcm, j);
	require(i != j, "order_of_product needs distinct generators");
	require(cutoff >= 6, "cutoff must be at least 6");

	IntMatrix p = simple_reflection(gcm, i).matrix * simple_reflection(gcm, j).matrix;
	IntMatrix acc = p;
	try
	{
		for (int k = 1; k <= cutoff; ++k)
		{
			if (acc.is_identity())
				return Order(k);
			acc = acc * p;
		}
	}
	catch (ResourceError const &)
	{
		// Entries blew up: the powers are unbounded, so the order is infinite.
	}
	if (gcm(i, j) * gcm(j, i) < 4)
		throw ModelError("product of reflections with finite Coxeter exponent "
		                 "exceeded the order cutoff");
	return Order::infinite();
}

RootVector real_root(Gcm const &gcm, WeylElement const &w, int i)
{
	check_index(gcm, i);
	RootVector r;
	r.coords = w.matrix.column(i);
	r.positive = root_sign(r.coords) > 0;
	return r;
}

RootVector apply(WeylElement const &w, RootVector const &v)
{
	int n = w.matrix.size();
	require(int(v.coords.size()) == n, "root dimension mismatch");
	RootVector r;
	r.coords.assign(std::size_t(n), 0);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			r.coords[std::size_t(i)] = add_checked(
			    r.coords[std::size_t(i)], mul_checked(w.matrix(i, j), v.coords[std::size_t(j)]));
	r.positive = root_sign(r.coords) > 0;
	return r;
}

// --- enumeration ----------------------------------------------------------

namespace {

struct Walker
{
	Gcm const &gcm;
	int max_length;
	std::function<bool(WeylElement const &)> const &visit;
	std::size_t limit;
	std::size_t count = 0;
	bool stopped = false;
	std::vector<std::int64_t> buf;

	// `node` is w with w.matrix current; `inv` is w^{-1}.
	void walk(WeylElement const &node, IntMatrix const &inv)
	{
		if (++count > limit)
			throw ResourceError("Weyl group enumeration exceeded the element limit",
			                    -1);
		if (!visit(node))
		{
			stopped = true;
			return;
		}
		if (node.length() >= max_length)
			return;
		int n = gcm.rank();
		for (int i = 0; i < n && !stopped; ++i)
		{
			if (column_sign(inv, i, buf) < 0)
				continue; // i is already a left descent of w
			// s_i w must have i as its smallest left descent.
			bool smallest = true;
			for (int j = 0; j < i && smallest; ++j)
				smallest = reflected_column_sign(gcm, inv, i, j, buf) > 0;
			if (!smallest)
				continue;
			WeylElement child{node.matrix, {}};
			left_reflect(gcm, child.matrix, i);
			child.word.reserve(node.word.size() + 1);
			child.word.push_back(i);
			child.word.insert(child.word.end(), node.word.begin(), node.word.end());
			IntMatrix child_inv = inv;
			right_reflect(gcm, child_inv, i);
			walk(child, child_inv);
		}
	}
};

} // namespace

void for_each_element(Gcm const &gcm, int max_length,
                      std::function<bool(WeylElement const &)> const &visit,
                      std::size_t limit)
{
	require(max_length >= 0, "ball radius must be >= 0");
	Walker walker{gcm, max_length, visit, limit, 0, false, {}};
	walker.walk(identity_element(gcm), IntMatrix::identity(gcm.rank()));
}

namespace {

// Largest radius whose ball fits under the limit; used for error reports.
int reached_radius(Gcm const &gcm, int N, std::size_t limit)
{
	int reached = -1;
	for (int d = 0; d < N; ++d)
	{
		try
		{
			for_each_element(gcm, d, [](WeylElement const &) { return true; }, limit);
			reached = d;
		}
		catch (ResourceError const &)
		{
			break;
		}
	}
	return reached;
}

} // namespace

std::vector<std::vector<WeylElement>> enumerate_ball(Gcm const &gcm, int N, std::size_t limit)
{
	std::vector<std::vector<WeylElement>> levels(std::size_t(std::max(N, 0) + 1));
	try
	{
		for_each_element(
		    gcm, N,
		    [&](WeylElement const &w) {
			    levels[std::size_t(w.length())].push_back(w);
			    return true;
		    },
		    limit);
	}
	catch (ResourceError const &)
	{
		throw ResourceError("Weyl ball enumeration exceeded the element limit",
		                    reached_radius(gcm, N, limit));
	}
	for (auto &level : levels)
		std::sort(level.begin(), level.end(),
		          [](WeylElement const &x, WeylElement const &y) { return x.word < y.word; });
	return levels;
}

GrowthSeries growth_coefficients(Gcm const &gcm, int N, std::size_t limit)
{
	GrowthSeries g;
	g.coefficients.assign(std::size_t(std::max(N, 0) + 1), 0);
	try
	{
		for_each_element(
		    gcm, N,
		    [&](WeylElement const &w) {
			    ++g.coefficients[std::size_t(w.length())];
			    return true;
		    },
		    limit);
	}
	catch (ResourceError const &)
	{
		throw ResourceError("growth series enumeration exceeded the element limit",
		                    reached_radius(gcm, N, limit));
	}
	if (gcm.rank() >= 5 && fuchsian_admissible(gcm, gcm.rank()).admissible)
		g.closed_form = fuchsian_closed_form(gcm.rank());
	return g;
}

std::vector<BigInt> ClosedForm::expand(int N) const
{
	require(!denominator.empty() && (denominator[0] == 1 || denominator[0] == -1),
	        "closed form denominator must have constant term +-1");
	std::vector<BigInt> c(std::size_t(std::max(N, 0) + 1));
	for (int k = 0; k <= N; ++k)
	{
		BigInt v = std::size_t(k) < numerator.size() ? BigInt(numerator[std::size_t(k)]) : 0;
		for (int j = 1; j <= k && std::size_t(j) < denominator.size(); ++j)
			v -= BigInt(denominator[std::size_t(j)]) * c[std::size_t(k - j)];
		c[std::size_t(k)] = v * denominator[0];
	}
	return c;
}

Rational ClosedForm::evaluate(Rational const &t) const
{
	auto horner = [&](std::vector<std::int64_t> const &p) {
		Rational acc = 0;
		for (auto it = p.rbegin(); it != p.rend(); ++it)
			acc = acc * t + Rational(*it);
		return acc;
	};
	Rational d = horner(denominator);
	if (d == 0)
		throw PreconditionError("closed form has a pole at the evaluation point");
	return horner(numerator) / d;
}

bool GrowthSeries::consistent() const
{
	if (!closed_form)
		return true;
	auto e = closed_form->expand(int(coefficients.size()) - 1);
	for (std::size_t k = 0; k < coefficients.size(); ++k)
		if (e[k] != BigInt(coefficients[k]))
			return false;
	return true;
}

ClosedForm fuchsian_closed_form(int r)
{
	require(r >= 5, "polygon size r must be >= 5");
	return {{1, 2, 1}, {1, -(r - 2), 1}};
}

LatticeVerdict lattice_criterion(int r, int q)
{
	require(r >= 5, "polygon size r must be >= 5");
	require(q >= 2, "thickness q must be >= 2");
	// Radius of convergence is the small root of 1-(r-2)t+t^2, so the
	// series converges at 1/q iff q^2 - (r-2)q + 1 > 0.
	long long d = (long long)q * q - (long long)(r - 2) * q + 1;
	LatticeVerdict v;
	v.lattice = d > 0;
	if (v.lattice)
		v.value = fuchsian_closed_form(r).evaluate(Rational(1, q));
	return v;
}

Rational growth_partial_sum(int r, int q, int N)
{
	auto a = fuchsian_closed_form(r).expand(N);
	Rational sum = 0;
	BigInt pow = 1;
	for (int n = 0; n <= N; ++n)
	{
		sum += Rational(a[std::size_t(n)], pow);
		pow *= q;
	}
	return sum;
}

// --- prenilpotency --------------------------------------------------------

char const *to_string(Prenilpotency p)
{
	switch (p)
	{
	case Prenilpotency::Prenilpotent:
		return "prenilpotent";
	case Prenilpotency::NonPrenilpotent:
		return "non-prenilpotent";
	default:
		return "unknown";
	}
}

std::int64_t bilinear_form(Gcm const &gcm, RootVector const &x, RootVector const &y)
{
	int n = gcm.rank();
	std::int64_t s = 0;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			s = add_checked(s, mul_checked(mul_checked(x.coords[std::size_t(i)], gcm(i, j)),
			                               y.coords[std::size_t(j)]));
	return s;
}

PrenilpotencyResult prenilpotent_pair(Gcm const &gcm, RootVector const &a,
                                      RootVector const &b, int depth)
{
	require(depth >= 0, "search depth must be >= 0");
	int n = gcm.rank();
	require(int(a.coords.size()) == n && int(b.coords.size()) == n,
	        "root dimension mismatch");
	root_sign(a.coords);
	root_sign(b.coords);

	PrenilpotencyResult res;
	res.depth = depth;

	if (a.coords == (-b).coords)
	{
		res.verdict = Prenilpotency::NonPrenilpotent;
		res.separation = SeparationCertificate{a, b, a, 0, std::nullopt};
		if (gcm.is_symmetric())
			res.separation->form_value = bilinear_form(gcm, a, a);
		return res;
	}

	for_each_element(gcm, depth, [&](WeylElement const &w) {
		int sa = root_sign(apply(w, a).coords);
		int sb = root_sign(apply(w, b).coords);
		if (sa > 0 && sb > 0 && !res.positive_witness)
			res.positive_witness = w;
		if (sa < 0 && sb < 0 && !res.negative_witness)
			res.negative_witness = w;
		return !(res.positive_witness && res.negative_witness);
	});

	if (res.positive_witness && res.negative_witness)
	{
		res.verdict = Prenilpotency::Prenilpotent;
		return res;
	}
	if (!gcm.is_symmetric())
		return res;

	std::int64_t beta = bilinear_form(gcm, a, b);
	if (beta > -2)
		return res; // walls cross or are nested; witnesses lie deeper

	// Non-crossing walls with B <= -2: one of a∩b, (-a)∩(-b) is empty, and a
	// chamber in the other one says which.
	SeparationCertificate cert;
	if (res.positive_witness)
	{
		cert = {-a, -b, b, -beta, res.positive_witness};
	}
	else if (res.negative_witness)
	{
		cert = {a, b, -b, -beta, res.negative_witness};
	}
	else
		return res;
	res.verdict = Prenilpotency::NonPrenilpotent;
	res.separation = std::move(cert);
	return res;
}

bool verify(Gcm const &gcm, RootVector const &a, RootVector const &b,
            PrenilpotencyResult const &result)
{
	auto sign = [](WeylElement const &w, RootVector const &v) {
		return root_sign(apply(w, v).coords);
	};
	switch (result.verdict)
	{
	case Prenilpotency::Prenilpotent:
		return result.positive_witness && result.negative_witness &&
		       sign(*result.positive_witness, a) > 0 && sign(*result.positive_witness, b) > 0 &&
		       sign(*result.negative_witness, a) < 0 && sign(*result.negative_witness, b) < 0;
	case Prenilpotency::NonPrenilpotent: {
		if (!result.separation)
			return false;
		auto const &s = *result.separation;
		bool pair_ok = (s.x == a && s.y == b) || (s.x == b && s.y == a) ||
		               (s.x == -a && s.y == -b) || (s.x == -b && s.y == -a);
		if (!pair_ok || !(s.y == -s.c))
			return false;
		if (s.x == s.c)
			return true;
		// x ⊆ c: walls do not cross (B >= 2) and some chamber lies in c but
		// not in x, which rules out c ⊊ x.
		if (!gcm.is_symmetric() || !s.chamber)
			return false;
		std::int64_t form = bilinear_form(gcm, s.x, s.c);
		return form == s.form_value && form >= 2 && sign(*s.chamber, s.c) > 0 &&
		       sign(*s.chamber, s.x) < 0;
	}
	default:
		return true;
	}
}

std::vector<WeylElement> panel_crossing_successors(Gcm const &gcm, WeylElement const &w, int s)
{
	WeylElement ws = multiply(gcm, w, simple_reflection(gcm, s));
	if (ws.length() > w.length())
		return {ws};
	return {ws, w};
}

} // namespace kmtk
