#include "kmtk/building.hpp"

#include "kmtk/error.hpp"
#include "kmtk/random.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kmtk {

std::string Chamber::str() const
{
	if (s_.empty())
		return "1";
	std::ostringstream os;
	for (std::size_t k = 0; k < s_.size(); ++k)
		os << (k ? "." : "") << "g" << s_[k].type << "^" << s_[k].exponent;
	return os.str();
}

std::strong_ordering Chamber::operator<=>(Chamber const &o) const
{
	if (auto c = s_.size() <=> o.s_.size(); c != 0)
		return c;
	return std::lexicographical_compare_three_way(s_.begin(), s_.end(), o.s_.begin(),
	                                              o.s_.end());
}

bool LinkGraph::complete_bipartite() const
{
	if (chambers != std::size_t(left) * std::size_t(right))
		return false;
	return std::all_of(incidence.begin(), incidence.end(), [](int c) { return c == 1; });
}

Building::Building(FuchsianParams params)
    : Building(params, right_angled_fuchsian_gcm(params.r))
{}

Building::Building(FuchsianParams params, Gcm weyl_gcm)
    : params_(std::move(params)), gcm_(std::move(weyl_gcm))
{
	params_.validate();
	auto v = fuchsian_admissible(gcm_, params_.r);
	require(v.admissible, "Weyl GCM is not Fuchsian admissible: " + v.reason);
}

bool Building::commute(int i, int j) const
{
	int r = params_.r;
	int d = ((i - j) % r + r) % r;
	return d == 1 || d == r - 1;
}

Chamber Building::canonical(std::vector<Syllable> w) const
{
	// Lexicographically least representative of the partially commutative
	// class: repeatedly pull out the smallest syllable that commutes with
	// everything in front of it.
	std::vector<Syllable> out;
	out.reserve(w.size());
	while (!w.empty())
	{
		std::size_t best = w.size();
		for (std::size_t p = 0; p < w.size(); ++p)
		{
			bool free = true;
			for (std::size_t k = 0; k < p && free; ++k)
				free = commute(w[k].type, w[p].type);
			if (free && (best == w.size() || w[p] < w[best]))
				best = p;
		}
		out.push_back(w[best]);
		w.erase(w.begin() + std::ptrdiff_t(best));
	}
	return Chamber(std::move(out));
}

Chamber Building::multiply(Chamber const &c, Syllable s) const
{
	require(s.type >= 0 && s.type < params_.r, "syllable type out of range");
	int m = modulus(s.type);
	int e = ((s.exponent % m) + m) % m;
	if (e == 0)
		return c;

	std::vector<Syllable> w = c.s_;
	for (std::size_t k = w.size(); k-- > 0;)
	{
		if (w[k].type == s.type)
		{
			int merged = (w[k].exponent + e) % m;
			if (merged == 0)
				w.erase(w.begin() + std::ptrdiff_t(k));
			else
				w[k].exponent = merged;
			return canonical(std::move(w));
		}
		if (!commute(w[k].type, s.type))
			break;
	}
	w.push_back({s.type, e});
	return canonical(std::move(w));
}

Chamber Building::multiply(Chamber const &c, Chamber const &d) const
{
	Chamber out = c;
	for (auto s : d.s_)
		out = multiply(out, s);
	return out;
}

Chamber Building::from_word(std::span<Syllable const> word) const
{
	Chamber out;
	for (auto s : word)
		out = multiply(out, s);
	return out;
}

Chamber Building::inverse(Chamber const &c) const
{
	std::vector<Syllable> word(c.s_.rbegin(), c.s_.rend());
	for (auto &s : word)
		s.exponent = modulus(s.type) - s.exponent;
	return from_word(word);
}

std::vector<Chamber> Building::panel_chambers(Chamber const &c, int type) const
{
	require(type >= 0 && type < params_.r, "panel type out of range");
	std::vector<Chamber> out;
	for (int e = 0; e <= thickness(type); ++e)
		out.push_back(multiply(c, Syllable{type, e}));
	std::sort(out.begin(), out.end());
	return out;
}

WeylElement Building::w_distance(Chamber const &c, Chamber const &d) const
{
	Chamber delta = multiply(inverse(c), d);
	std::vector<int> types;
	for (auto s : delta.s_)
		types.push_back(s.type);
	WeylElement w = normal_form(gcm_, types);
	if (w.length() != int(types.size()))
		throw ModelError("normal-form chamber " + delta.str() +
		                 " does not project to a reduced Weyl word");
	return w;
}

std::vector<std::vector<Chamber>> Building::ball(int N, std::size_t limit) const
{
	require(N >= 0, "ball radius must be >= 0");
	std::vector<std::vector<Chamber>> levels{{base()}};
	std::size_t total = 1;
	for (int k = 0; k < N; ++k)
	{
		std::set<Chamber> next;
		for (auto const &c : levels.back())
			for (int i = 0; i < params_.r; ++i)
				for (int e = 1; e <= thickness(i); ++e)
				{
					Chamber d = multiply(c, Syllable{i, e});
					if (d.gallery_length() == k + 1)
						next.insert(std::move(d));
				}
		total += next.size();
		if (total > limit)
			throw ResourceError("building ball exceeded the chamber limit", k);
		levels.emplace_back(next.begin(), next.end());
	}
	return levels;
}

std::vector<Chamber> Building::residue_chambers(VertexResidue const &v) const
{
	int i = v.type, j = (v.type + 1) % params_.r;
	std::vector<Chamber> out;
	for (int a = 0; a <= thickness(i); ++a)
		for (int b = 0; b <= thickness(j); ++b)
			out.push_back(multiply(multiply(v.base, Syllable{i, a}), Syllable{j, b}));
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

LinkGraph Building::link(VertexResidue const &v) const
{
	require(v.type >= 0 && v.type < params_.r, "residue type out of range");
	int i = v.type, j = (v.type + 1) % params_.r;

	// Closure of the base under both generators, independent of the
	// product-shape assumption made in residue_chambers.
	std::set<Chamber> members{v.base};
	std::vector<Chamber> frontier{v.base};
	while (!frontier.empty())
	{
		Chamber c = frontier.back();
		frontier.pop_back();
		for (int t : {i, j})
			for (int e = 1; e <= thickness(t); ++e)
			{
				Chamber d = multiply(c, Syllable{t, e});
				if (members.insert(d).second)
					frontier.push_back(d);
			}
	}

	std::vector<std::vector<Chamber>> left, right;
	auto panel_id = [&](std::vector<std::vector<Chamber>> &panels, std::vector<Chamber> p) {
		auto it = std::find(panels.begin(), panels.end(), p);
		if (it != panels.end())
			return int(it - panels.begin());
		panels.push_back(std::move(p));
		return int(panels.size()) - 1;
	};
	std::vector<std::pair<int, int>> edges;
	for (auto const &c : members)
		edges.emplace_back(panel_id(left, panel_chambers(c, i)),
		                   panel_id(right, panel_chambers(c, j)));

	LinkGraph g;
	g.left = int(left.size());
	g.right = int(right.size());
	g.chambers = members.size();
	g.incidence.assign(std::size_t(g.left * g.right), 0);
	for (auto [l, r] : edges)
		++g.incidence[std::size_t(l * g.right + r)];
	return g;
}

PresentationReport Building::verify_presentation(int sample_size, std::uint64_t seed) const
{
	PresentationReport rep;
	int r = params_.r;

	rep.cyclic_relations = true;
	for (int i = 0; i < r; ++i)
	{
		Chamber c;
		for (int k = 0; k <= thickness(i); ++k)
			c = multiply(c, Syllable{i, 1});
		if (!c.is_base())
		{
			rep.cyclic_relations = false;
			rep.failures.push_back("gamma_" + std::to_string(i) + "^(q+1) != 1");
		}
	}

	auto commutator = [&](int i, int j) {
		std::vector<Syllable> w{{i, 1}, {j, 1}, {i, thickness(i)}, {j, thickness(j)}};
		return from_word(w);
	};
	rep.adjacent_commutators = true;
	rep.nonadjacent_commutators_nontrivial = true;
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			if (i == j)
				continue;
			bool trivial = commutator(i, j).is_base();
			if (commute(i, j) && !trivial)
			{
				rep.adjacent_commutators = false;
				rep.failures.push_back("[gamma_" + std::to_string(i) + ",gamma_" +
				                       std::to_string(j) + "] != 1");
			}
			if (!commute(i, j) && trivial)
			{
				rep.nonadjacent_commutators_nontrivial = false;
				rep.failures.push_back("[gamma_" + std::to_string(i) + ",gamma_" +
				                       std::to_string(j) + "] == 1");
			}
		}

	std::mt19937_64 rng(seed);
	auto random_word = [&] {
		std::vector<Syllable> w(uniform_below(rng, 9));
		for (auto &s : w)
		{
			s.type = int(uniform_below(rng, std::uint64_t(r)));
			s.exponent = 1 + int(uniform_below(rng, std::uint64_t(thickness(s.type))));
		}
		return w;
	};
	for (int k = 0; k < sample_size; ++k)
	{
		auto u = random_word(), v = random_word(), w = random_word();
		std::vector<Syllable> uv = u;
		uv.insert(uv.end(), v.begin(), v.end());
		Chamber nu = from_word(u), nv = from_word(v), nw = from_word(w);

		bool ok = from_word(uv) == multiply(nu, nv);
		ok = ok && multiply(multiply(nu, nv), nw) == multiply(nu, multiply(nv, nw));

		// Swapping adjacent commuting letters must not change the normal form.
		auto shuffled = uv;
		for (int t = 0; t < 8 && shuffled.size() > 1; ++t)
		{
			auto p = std::size_t(uniform_below(rng, shuffled.size() - 1));
			if (commute(shuffled[p].type, shuffled[p + 1].type))
				std::swap(shuffled[p], shuffled[p + 1]);
		}
		ok = ok && from_word(shuffled) == from_word(uv);
		ok = ok && multiply(nu, inverse(nu)).is_base();

		++rep.samples;
		if (!ok)
		{
			++rep.sample_failures;
			if (rep.failures.size() < 10)
				rep.failures.push_back("sample " + std::to_string(k) + " inconsistent");
		}
	}
	return rep;
}

std::uint64_t Building::expected_ball_size(int N) const
{
	std::uint64_t total = 0;
	for_each_element(gcm_, N, [&](WeylElement const &w) {
		std::uint64_t prod = 1;
		for (int t : w.word)
			prod *= std::uint64_t(thickness(t));
		total += prod;
		return true;
	});
	return total;
}

} // namespace kmtk
