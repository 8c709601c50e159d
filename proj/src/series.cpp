#include "kmtk/series.hpp"

#include "kmtk/error.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace kmtk {

namespace {

int sat_add(int a, int b)
{
	std::int64_t s = std::int64_t(a) + b;
	if (a == Series::kExact || b == Series::kExact || s >= Series::kExact)
		return Series::kExact;
	require(s > INT_MIN / 2, "series exponent underflow");
	return int(s);
}

void same_field(Series const &a, Series const &b)
{
	require(a.field() == b.field() || a.field()->q() == b.field()->q(),
	        "series over different fields");
}

} // namespace

Series::Series(FieldPtr f, int lo, std::vector<int> c, int hi)
    : f_(std::move(f)), lo_(lo), c_(std::move(c)), hi_(hi)
{
	normalize();
}

void Series::normalize()
{
	if (hi_ != kExact && !c_.empty())
	{
		std::int64_t keep = std::int64_t(hi_) - lo_;
		if (keep <= 0)
			c_.clear();
		else if (std::int64_t(c_.size()) > keep)
			c_.resize(std::size_t(keep));
	}
	std::size_t first = 0;
	while (first < c_.size() && c_[first] == 0)
		++first;
	if (first == c_.size())
	{
		c_.clear();
		lo_ = 0;
		return;
	}
	while (c_.back() == 0)
		c_.pop_back();
	if (first > 0)
	{
		c_.erase(c_.begin(), c_.begin() + std::ptrdiff_t(first));
		lo_ += int(first);
	}
}

Series Series::monomial(FieldPtr f, int c, int k)
{
	require(f->contains(c), "coefficient outside the field");
	return Series(std::move(f), k, {c}, kExact);
}

Series Series::from_coeffs(FieldPtr f, int lo, std::vector<int> coeffs, int precision)
{
	for (int c : coeffs)
		require(f->contains(c), "coefficient outside the field");
	return Series(std::move(f), lo, std::move(coeffs), precision);
}

Series Series::from_terms(FieldPtr f, std::vector<std::pair<int, int>> const &terms,
                          int precision)
{
	Series s(f, 0, {}, precision);
	for (auto [k, c] : terms)
		s = s + monomial(f, c, k).with_precision(precision);
	return s;
}

int Series::coeff(int k) const
{
	if (k >= hi_)
		throw PrecisionError("coefficient of t^" + std::to_string(k) +
		                     " is outside the precision window (< " + std::to_string(hi_) + ")");
	if (k < lo_ || k >= lo_ + int(c_.size()))
		return 0;
	return c_[std::size_t(k - lo_)];
}

bool Series::valuation_at_least(int n) const
{
	if (!c_.empty())
		return lo_ >= n;
	if (hi_ >= n)
		return true;
	throw PrecisionError("valuation undecidable: series known only below t^" +
	                     std::to_string(hi_));
}

std::vector<std::pair<int, int>> Series::terms() const
{
	std::vector<std::pair<int, int>> out;
	for (std::size_t i = 0; i < c_.size(); ++i)
		if (c_[i] != 0)
			out.emplace_back(lo_ + int(i), c_[i]);
	return out;
}

std::string Series::str() const
{
	std::ostringstream os;
	bool first = true;
	for (auto [k, c] : terms())
	{
		os << (first ? "" : " + ");
		first = false;
		if (c != 1 || k == 0)
			os << c;
		if (k != 0)
			os << (c != 1 ? "*" : "") << "t^" << k;
	}
	if (first)
		os << "0";
	if (!is_exact())
		os << " + O(t^" << hi_ << ")";
	return os.str();
}

Series Series::operator-() const
{
	std::vector<int> c = c_;
	for (auto &x : c)
		x = f_->neg(x);
	return Series(f_, lo_, std::move(c), hi_);
}

Series operator+(Series const &a, Series const &b)
{
	same_field(a, b);
	if (a.c_.empty())
		return Series(a.f_, b.lo_, b.c_, std::min(a.hi_, b.hi_));
	if (b.c_.empty())
		return Series(a.f_, a.lo_, a.c_, std::min(a.hi_, b.hi_));
	int lo = std::min(a.lo_, b.lo_);
	int top = std::max(a.lo_ + int(a.c_.size()), b.lo_ + int(b.c_.size()));
	std::vector<int> c(std::size_t(top - lo), 0);
	for (std::size_t i = 0; i < a.c_.size(); ++i)
		c[std::size_t(a.lo_ - lo) + i] = a.c_[i];
	for (std::size_t i = 0; i < b.c_.size(); ++i)
	{
		auto &x = c[std::size_t(b.lo_ - lo) + i];
		x = a.f_->add(x, b.c_[i]);
	}
	return Series(a.f_, lo, std::move(c), std::min(a.hi_, b.hi_));
}

Series operator-(Series const &a, Series const &b)
{
	return a + (-b);
}

Series operator*(Series const &a, Series const &b)
{
	same_field(a, b);
	int hi = std::min(sat_add(a.hi_, b.valuation_lower_bound()),
	                  sat_add(b.hi_, a.valuation_lower_bound()));
	if (a.c_.empty() || b.c_.empty())
		return Series(a.f_, 0, {}, hi);
	std::size_t n = a.c_.size() + b.c_.size() - 1;
	if (hi != Series::kExact)
		n = std::min<std::size_t>(n, std::size_t(std::max<std::int64_t>(
		                                 0, std::int64_t(hi) - a.lo_ - b.lo_)));
	std::vector<int> c(n, 0);
	auto const &F = *a.f_;
	for (std::size_t i = 0; i < a.c_.size() && i < n; ++i)
	{
		if (a.c_[i] == 0)
			continue;
		for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j)
			c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
	}
	return Series(a.f_, a.lo_ + b.lo_, std::move(c), hi);
}

Series Series::scaled(int c) const
{
	require(f_->contains(c), "scalar outside the field");
	std::vector<int> out = c_;
	for (auto &x : out)
		x = f_->mul(x, c);
	return Series(f_, lo_, std::move(out), hi_);
}

Series Series::shifted(int k) const
{
	return Series(f_, lo_ + k, c_, sat_add(hi_, hi_ == kExact ? 0 : k));
}

Series Series::truncated(int h) const
{
	if (h > hi_)
		throw PrecisionError("reduction modulo t^" + std::to_string(h) +
		                     " needs coefficients known below t^" + std::to_string(h) +
		                     ", have < " + std::to_string(hi_));
	std::vector<int> c;
	for (std::size_t i = 0; i < c_.size() && lo_ + int(i) < h; ++i)
		c.push_back(c_[i]);
	return Series(f_, lo_, std::move(c), kExact);
}

Series Series::with_precision(int hi) const
{
	return Series(f_, lo_, c_, std::min(hi, hi_));
}

Series Series::inverse(int rel_precision) const
{
	if (c_.empty())
		throw PrecisionError(is_exact() ? "inverse of zero"
		                                : "inverse of a series with no known nonzero term");
	int v = lo_;
	int lead_inv = f_->inv(c_.front());
	if (c_.size() == 1 && is_exact())
		return Series(f_, -v, {lead_inv}, kExact);

	int rel = is_exact() ? rel_precision : std::min(rel_precision, hi_ - v);
	require(rel >= 1, "inverse needs positive relative precision");
	// Normalized b = a / (c t^v) = 1 + b_1 t + ...; e = 1/b term by term.
	std::vector<int> b(std::size_t(rel), 0);
	for (std::size_t i = 0; i < c_.size() && i < b.size(); ++i)
		b[i] = f_->mul(c_[i], lead_inv);
	std::vector<int> e(std::size_t(rel), 0);
	e[0] = 1;
	for (int k = 1; k < rel; ++k)
	{
		int s = 0;
		for (int j = 1; j <= k; ++j)
			s = f_->add(s, f_->mul(b[std::size_t(j)], e[std::size_t(k - j)]));
		e[std::size_t(k)] = f_->neg(s);
	}
	for (auto &x : e)
		x = f_->mul(x, lead_inv);
	return Series(f_, -v, std::move(e), -v + rel);
}

Series Series::divide(Series const &a, Series const &b, int needed)
{
	if (a.is_known_zero())
		return a;
	int va = a.valuation_lower_bound();
	int vb = b.valuation_lower_bound();
	std::int64_t rel = std::int64_t(needed) - va + vb + 1;
	rel = std::clamp<std::int64_t>(rel, 1, 1 << 20);
	return a * b.inverse(int(rel));
}

bool Series::operator==(Series const &o) const
{
	return hi_ == o.hi_ && lo_ == o.lo_ && c_ == o.c_;
}

bool Series::agrees_below(Series const &o, int h) const
{
	return truncated(h) == o.truncated(h);
}

std::size_t Series::hash() const noexcept
{
	std::size_t h = std::hash<int>()(lo_) ^ (std::size_t(hi_) * 0x9e3779b97f4a7c15ULL);
	for (int x : c_)
		h = h * 1000003u ^ std::size_t(x);
	return h;
}

} // namespace kmtk
