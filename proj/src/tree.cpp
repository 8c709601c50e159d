#include "kmtk/tree.hpp"

#include "kmtk/error.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace kmtk {

TreeVertex::TreeVertex(int height, Series coset) : h(height), x(coset.truncated(height)) {}

std::string TreeVertex::str() const
{
	return "(" + std::to_string(h) + ", " + x.str() + ")";
}

TreeVertex parent(TreeVertex const &v)
{
	return TreeVertex(v.h - 1, v.x);
}

std::vector<TreeVertex> children(TreeVertex const &v)
{
	std::vector<TreeVertex> out;
	auto const &f = v.x.field();
	for (int c = 0; c < f->q(); ++c)
		out.emplace_back(v.h + 1, v.x + Series::monomial(f, c, v.h));
	return out;
}

std::vector<TreeVertex> neighbors(TreeVertex const &v)
{
	auto out = children(v);
	out.insert(out.begin(), parent(v));
	return out;
}

int meet_height(TreeVertex const &a, TreeVertex const &b)
{
	int m = std::min(a.h, b.h);
	return std::min(m, (a.x - b.x).valuation());
}

int tree_distance(TreeVertex const &a, TreeVertex const &b)
{
	int m = meet_height(a, b);
	return (a.h - m) + (b.h - m);
}

VertexId VertexRegistry::intern(TreeVertex const &v)
{
	auto [it, inserted] = ids_.try_emplace(v, VertexId(vertices_.size()));
	if (inserted)
	{
		require(vertices_.size() < std::size_t(INT32_MAX), "vertex registry overflow");
		vertices_.push_back(v);
	}
	return it->second;
}

VertexId VertexRegistry::find(TreeVertex const &v) const
{
	auto it = ids_.find(v);
	return it == ids_.end() ? -1 : it->second;
}

std::vector<VertexId> ball(VertexRegistry &reg, TreeVertex const &center, int radius)
{
	require(radius >= 0, "ball radius must be >= 0");
	std::vector<VertexId> out{reg.intern(center)};
	std::unordered_set<VertexId> seen{out.front()};
	std::deque<std::pair<VertexId, int>> queue{{out.front(), 0}};
	while (!queue.empty())
	{
		auto [id, d] = queue.front();
		queue.pop_front();
		if (d == radius)
			continue;
		TreeVertex v = reg.vertex(id); // copy: interning may reallocate
		for (auto const &w : neighbors(v))
		{
			VertexId wid = reg.intern(w);
			if (seen.insert(wid).second)
			{
				out.push_back(wid);
				queue.emplace_back(wid, d + 1);
			}
		}
	}
	return out;
}

BallDomain::BallDomain(VertexRegistry &reg, TreeVertex const &center, int radius)
    : reg_(&reg), radius_(radius), ids_(ball(reg, center, radius))
{
	for (std::size_t i = 0; i < ids_.size(); ++i)
	{
		auto id = std::size_t(ids_[i]);
		if (pos_.size() <= id)
			pos_.resize(id + 1, -1);
		pos_[id] = int(i);
	}
}

int BallDomain::position(VertexId id) const
{
	return id >= 0 && std::size_t(id) < pos_.size() ? pos_[std::size_t(id)] : -1;
}

Table BallDomain::table_of(std::function<TreeVertex(TreeVertex const &)> const &g) const
{
	Table t(ids_.size());
	for (std::size_t i = 0; i < ids_.size(); ++i)
	{
		TreeVertex v = reg_->vertex(ids_[i]);
		t[i] = reg_->intern(g(v));
	}
	return t;
}

Table BallDomain::compose(Table const &outer, Table const &inner) const
{
	Table t(inner.size());
	for (std::size_t i = 0; i < inner.size(); ++i)
	{
		int p = position(inner[i]);
		if (p < 0)
			throw ModelError("composition leaves the ball domain");
		t[i] = outer[std::size_t(p)];
	}
	return t;
}

Table BallDomain::restrict(Table const &t, BallDomain const &smaller) const
{
	Table out(smaller.size());
	for (std::size_t i = 0; i < smaller.size(); ++i)
	{
		int p = position(smaller.ids()[i]);
		require(p >= 0, "restriction target is not contained in the domain");
		out[i] = t[std::size_t(p)];
	}
	return out;
}

std::size_t TableHash::operator()(Table const &t) const noexcept
{
	std::size_t h = t.size();
	for (auto x : t)
		h = (h ^ std::size_t(x)) * 0x100000001b3ULL;
	return h;
}

ClosureResult closure(BallDomain const &dom, std::vector<Table> const &generators,
                      int word_budget, std::size_t limit)
{
	std::vector<Table> gens;
	Table id = dom.identity();
	for (auto const &g : generators)
	{
		require(g.size() == dom.size(), "generator table has the wrong size");
		for (auto x : g)
			require(dom.contains(x), "generator does not preserve the ball domain");
		if (g != id && std::find(gens.begin(), gens.end(), g) == gens.end())
			gens.push_back(g);
	}

	std::unordered_set<Table, TableHash> seen{id};
	std::vector<Table> frontier{id};
	ClosureResult res;
	while (!frontier.empty() && res.rounds < word_budget)
	{
		std::vector<Table> next;
		for (auto const &t : frontier)
			for (auto const &g : gens)
			{
				Table u = dom.compose(g, t);
				if (seen.insert(u).second)
				{
					if (seen.size() > limit)
						throw ResourceError("subgroup closure exceeded the table limit",
						                    res.rounds);
					next.push_back(std::move(u));
				}
			}
		frontier = std::move(next);
		++res.rounds;
	}
	res.saturated = frontier.empty();
	res.tables.assign(seen.begin(), seen.end());
	std::sort(res.tables.begin(), res.tables.end());
	return res;
}

} // namespace kmtk
