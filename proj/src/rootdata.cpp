#include "kmtk/rootdata.hpp"

#include "kmtk/error.hpp"

#include <algorithm>
#include <fstream>
#include "json.hpp"

namespace kmtk {

namespace {

int mod(int i, int r) { return ((i % r) + r) % r; }

bool cyclically_adjacent(int i, int j, int r)
{
	return mod(i - j, r) == 1 || mod(j - i, r) == 1;
}

bool is_prime(int n)
{
	if (n < 2)
		return false;
	for (int d = 2; d * d <= n; ++d)
		if (n % d == 0)
			return false;
	return true;
}

} // namespace

Gcm::Gcm(int n, std::vector<int> entries) : n_(n), a_(std::move(entries))
{
	require(n >= 1, "GCM rank must be positive");
	require(a_.size() == std::size_t(n) * std::size_t(n),
	        "GCM entry count does not match rank");
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
		{
			int v = (*this)(i, j);
			if (i == j)
				require(v == 2, "GCM diagonal entries must be 2");
			else
			{
				require(v <= 0, "GCM off-diagonal entries must be <= 0");
				require((v == 0) == ((*this)(j, i) == 0),
				        "GCM zero pattern must be symmetric");
			}
		}
}

static std::vector<int> flatten(std::vector<std::vector<int>> const &rows)
{
	std::vector<int> flat;
	for (auto const &row : rows)
	{
		require(row.size() == rows.size(), "GCM must be square");
		flat.insert(flat.end(), row.begin(), row.end());
	}
	return flat;
}

Gcm::Gcm(std::vector<std::vector<int>> const &rows)
    : Gcm(int(rows.size()), flatten(rows))
{}

bool Gcm::is_symmetric() const
{
	for (int i = 0; i < n_; ++i)
		for (int j = 0; j < i; ++j)
			if ((*this)(i, j) != (*this)(j, i))
				return false;
	return true;
}

nlohmann::json Gcm::to_json() const
{
	auto rows = nlohmann::json::array();
	for (int i = 0; i < n_; ++i)
	{
		auto row = nlohmann::json::array();
		for (int j = 0; j < n_; ++j)
			row.push_back((*this)(i, j));
		rows.push_back(row);
	}
	return rows;
}

Gcm Gcm::from_json(nlohmann::json const &j)
{
	require(j.is_array(), "GCM JSON must be an array of integer rows");
	std::vector<std::vector<int>> rows;
	for (auto const &row : j)
	{
		require(row.is_array(), "GCM JSON rows must be arrays");
		std::vector<int> r;
		for (auto const &v : row)
		{
			require(v.is_number_integer(), "GCM JSON entries must be integers");
			r.push_back(v.get<int>());
		}
		rows.push_back(std::move(r));
	}
	require(!rows.empty(), "GCM JSON is empty");
	return Gcm(rows);
}

Gcm Gcm::load(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw PreconditionError("cannot open GCM file: " + path);
	nlohmann::json j;
	try
	{
		in >> j;
	}
	catch (nlohmann::json::exception const &e)
	{
		throw PreconditionError("malformed GCM file " + path + ": " + e.what());
	}
	return from_json(j);
}

std::string Order::str() const
{
	return is_infinite() ? "inf" : std::to_string(value_);
}

CoxeterMatrix::CoxeterMatrix(int n, std::vector<Order> m) : n_(n), m_(std::move(m))
{
	require(m_.size() == std::size_t(n) * std::size_t(n),
	        "Coxeter matrix entry count does not match rank");
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
		{
			Order o = (*this)(i, j);
			require(o == (*this)(j, i), "Coxeter matrix must be symmetric");
			if (i == j)
				require(o == Order(1), "Coxeter matrix diagonal must be 1");
			else
			{
				int v = o.value();
				require(o.is_infinite() || v == 2 || v == 3 || v == 4 || v == 6,
				        "Coxeter exponent " + o.str() +
				            " is not liftable to a generalized Cartan matrix");
			}
		}
}

CoxeterMatrix CoxeterMatrix::right_angled_polygon(int r)
{
	std::vector<Order> m(std::size_t(r * r), Order::infinite());
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			if (i == j)
				m[std::size_t(i * r + j)] = Order(1);
			else if (cyclically_adjacent(i, j, r))
				m[std::size_t(i * r + j)] = Order(2);
	return CoxeterMatrix(r, std::move(m));
}

FuchsianParams FuchsianParams::uniform(int r, int q)
{
	FuchsianParams p;
	p.r = r;
	p.q.assign(std::size_t(std::max(r, 0)), q);
	return p;
}

void FuchsianParams::validate(bool need_prime_power) const
{
	require(r >= 5, "polygon size r must be >= 5");
	require(q.size() == std::size_t(r), "need exactly r thickness parameters");
	for (int qi : q)
		require(qi >= 2, "thickness parameters q_i must be >= 2");
	if (need_prime_power)
	{
		require(is_prime(p), "characteristic p must be prime");
		for (int qi : q)
		{
			int v = qi;
			while (v % p == 0)
				v /= p;
			require(v == 1, "q_i must be a power of the characteristic");
		}
	}
}

bool FuchsianParams::constant_thickness() const
{
	return std::adjacent_find(q.begin(), q.end(), std::not_equal_to<>()) == q.end();
}

Order coxeter_exponent(int a, int b)
{
	require(a <= 0 && b <= 0, "Cartan entries must be non-positive");
	require((a == 0) == (b == 0), "Cartan entries must vanish together");
	switch (a * b)
	{
	case 0:
		return Order(2);
	case 1:
		return Order(3);
	case 2:
		return Order(4);
	case 3:
		return Order(6);
	default:
		return Order::infinite();
	}
}

CoxeterMatrix coxeter_matrix_of(Gcm const &gcm)
{
	int n = gcm.rank();
	std::vector<Order> m(std::size_t(n * n));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			m[std::size_t(i * n + j)] =
			    i == j ? Order(1) : coxeter_exponent(gcm(i, j), gcm(j, i));
	return CoxeterMatrix(n, std::move(m));
}

AdmissibilityVerdict fuchsian_admissible(Gcm const &gcm, int r)
{
	require(gcm.rank() == r, "GCM rank " + std::to_string(gcm.rank()) +
	                             " does not match polygon size " + std::to_string(r));
	AdmissibilityVerdict v;
	if (r < 5)
	{
		v.reason = "a right-angled hyperbolic polygon needs at least 5 sides";
		return v;
	}
	for (int i = 0; i < r; ++i)
		for (int j = i + 1; j < r; ++j)
		{
			int a = gcm(i, j), b = gcm(j, i);
			Order e = coxeter_exponent(a, b);
			bool ok = cyclically_adjacent(i, j, r)
			              ? a == 0
			              : (a <= -1 && b <= -1 && e.is_infinite());
			if (!ok)
			{
				v.offending = {i, j};
				v.exponent = e;
				v.reason = cyclically_adjacent(i, j, r)
				               ? "adjacent types must commute (exponent 2)"
				               : "non-adjacent types need A[i][j]*A[j][i] >= 4";
				return v;
			}
		}
	v.admissible = true;
	return v;
}

bool abelian_radical_condition(Gcm const &gcm, int i)
{
	int r = gcm.rank();
	int lo = mod(i - 1, r), hi = mod(i + 1, r);
	return gcm(lo, hi) <= -2 && gcm(hi, lo) <= -2;
}

std::vector<Gcm> enumerate_admissible_gcms(int r, int coeff_bound, std::size_t limit)
{
	require(r >= 5, "polygon size r must be >= 5");
	require(coeff_bound >= 1, "coefficient bound must be >= 1");

	// Admissible values for one non-adjacent unordered pair.
	std::vector<std::pair<int, int>> choices;
	for (int a = -coeff_bound; a <= -1; ++a)
		for (int b = -coeff_bound; b <= -1; ++b)
			if (a * b >= 4)
				choices.emplace_back(a, b);

	std::vector<std::pair<int, int>> slots;
	for (int i = 0; i < r; ++i)
		for (int j = i + 1; j < r; ++j)
			if (!cyclically_adjacent(i, j, r))
				slots.emplace_back(i, j);

	std::vector<Gcm> out;
	if (choices.empty())
		return out;

	std::vector<std::size_t> digit(slots.size(), 0);
	std::vector<int> a(std::size_t(r * r), 0);
	for (int i = 0; i < r; ++i)
		a[std::size_t(i * r + i)] = 2;
	for (;;)
	{
		if (out.size() >= limit)
			throw ResourceError("GCM enumeration exceeded limit", static_cast<long long>(out.size()));
		for (std::size_t s = 0; s < slots.size(); ++s)
		{
			auto [i, j] = slots[s];
			a[std::size_t(i * r + j)] = choices[digit[s]].first;
			a[std::size_t(j * r + i)] = choices[digit[s]].second;
		}
		out.emplace_back(r, a);

		std::size_t s = 0;
		while (s < digit.size() && ++digit[s] == choices.size())
			digit[s++] = 0;
		if (s == digit.size())
			break;
	}
	std::sort(out.begin(), out.end());
	return out;
}

Gcm right_angled_fuchsian_gcm(int r, int c)
{
	require(r >= 5, "polygon size r must be >= 5");
	require(c >= 2, "off-diagonal magnitude must be >= 2");
	std::vector<int> a(std::size_t(r * r));
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			a[std::size_t(i * r + j)] = i == j ? 2 : cyclically_adjacent(i, j, r) ? 0 : -c;
	return Gcm(r, std::move(a));
}

} // namespace kmtk
