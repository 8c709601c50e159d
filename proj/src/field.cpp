#include "kmtk/field.hpp"

#include "kmtk/error.hpp"

namespace kmtk {

namespace {

constexpr int kMaxOrder = 1024;

} // namespace

std::pair<int, int> prime_power(int q)
{
	if (q < 2)
		return {0, 0};
	int p = 2;
	while (p * p <= q && q % p != 0)
		++p;
	if (q % p != 0)
		p = q;
	int k = 0;
	for (int m = q; m > 1; m /= p, ++k)
		if (m % p != 0)
			return {0, 0};
	return {p, k};
}

FieldPtr FiniteField::make(int q, std::vector<int> modulus)
{
	auto [p, k] = prime_power(q);
	require(p != 0, "q = " + std::to_string(q) + " is not a prime power");
	require(q <= kMaxOrder, "field order above " + std::to_string(kMaxOrder) + " not supported");
	if (k == 1)
	{
		require(modulus.empty(), "prime fields take no modulus");
		return FieldPtr(new FiniteField(q, p, 1, {}));
	}
	if (modulus.empty())
	{
		require(q == 4, "F_" + std::to_string(q) + " needs an explicit irreducible polynomial");
		modulus = {1, 1, 1};
	}
	require(int(modulus.size()) == k + 1 && modulus.back() == 1,
	        "modulus must be monic of degree " + std::to_string(k));
	for (int c : modulus)
		require(c >= 0 && c < p, "modulus coefficients must lie in 0..p-1");
	return FieldPtr(new FiniteField(q, p, k, std::move(modulus)));
}

FiniteField::FiniteField(int q, int p, int k, std::vector<int> modulus)
    : q_(q), p_(p), k_(k), modulus_(std::move(modulus))
{
	std::size_t n = std::size_t(q);
	add_.resize(n * n);
	mul_.resize(n * n);
	neg_.resize(n);
	inv_.assign(n, 0);

	auto digits = [&](int a) {
		std::vector<int> d(static_cast<std::size_t>(k_));
		for (auto &x : d)
		{
			x = a % p_;
			a /= p_;
		}
		return d;
	};
	auto encode = [&](std::vector<int> const &d) {
		int a = 0;
		for (std::size_t i = d.size(); i-- > 0;)
			a = a * p_ + d[i];
		return a;
	};

	for (int a = 0; a < q; ++a)
	{
		auto da = digits(a);
		std::vector<int> dn(da.size());
		for (std::size_t i = 0; i < da.size(); ++i)
			dn[i] = (p_ - da[i]) % p_;
		neg_[std::size_t(a)] = encode(dn);
		for (int b = 0; b < q; ++b)
		{
			auto db = digits(b);
			std::vector<int> ds(da.size());
			for (std::size_t i = 0; i < da.size(); ++i)
				ds[i] = (da[i] + db[i]) % p_;
			add_[idx(a, b)] = encode(ds);

			// Schoolbook product, then reduce by the monic modulus.
			std::vector<int> prod(std::size_t(2 * k_ - 1), 0);
			for (int i = 0; i < k_; ++i)
				for (int j = 0; j < k_; ++j)
					prod[std::size_t(i + j)] = (prod[std::size_t(i + j)] + da[std::size_t(i)] * db[std::size_t(j)]) % p_;
			for (int d = 2 * k_ - 2; d >= k_; --d)
			{
				int c = prod[std::size_t(d)];
				if (c == 0)
					continue;
				for (int i = 0; i <= k_; ++i)
				{
					auto &x = prod[std::size_t(d - k_ + i)];
					x = ((x - c * modulus_.at(std::size_t(i))) % p_ + p_) % p_;
				}
			}
			prod.resize(std::size_t(k_));
			mul_[idx(a, b)] = k_ == 1 ? (a * b) % p_ : encode(prod);
		}
	}

	// A zero divisor means the modulus is reducible.
	for (int a = 1; a < q; ++a)
		for (int b = 1; b < q; ++b)
		{
			int c = mul_[idx(a, b)];
			require(c != 0, "modulus is reducible over F_" + std::to_string(p_));
			if (c == 1)
				inv_[std::size_t(a)] = b;
		}
}

int FiniteField::inv(int a) const
{
	require(a > 0 && a < q_, "inverse of zero or of a non-element");
	return inv_[std::size_t(a)];
}

std::string FiniteField::describe() const
{
	std::string s = "F_" + std::to_string(q_);
	if (k_ > 1)
	{
		s += " = F_" + std::to_string(p_) + "[x]/(";
		bool first = true;
		for (int i = k_; i >= 0; --i)
		{
			int c = modulus_[std::size_t(i)];
			if (c == 0)
				continue;
			s += first ? "" : "+";
			first = false;
			if (i == 0 || c != 1)
				s += std::to_string(c);
			if (i > 0)
				s += i == 1 ? "x" : "x^" + std::to_string(i);
		}
		s += ")";
	}
	return s;
}

} // namespace kmtk
