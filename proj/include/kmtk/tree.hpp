#pragma once

#include "kmtk/series.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kmtk {

/// Vertex of the (q+1)-regular tree in horocyclic coordinates: height h (the
/// Busemann value towards the end xi at h -> -inf) and the class of a series
/// modulo {nu >= h}, stored as its exact terms below h. The line L is
/// {(h, 0)} and v_m = (-m, 0).
struct TreeVertex
{
	int h = 0;
	Series x;

	TreeVertex(int height, Series coset);
	static TreeVertex line(FieldPtr f, int m) { return TreeVertex(-m, Series(std::move(f))); }

	bool operator==(TreeVertex const &o) const { return h == o.h && x == o.x; }
	std::string str() const;
};

/// Neighbour towards xi.
TreeVertex parent(TreeVertex const &v);
/// The q neighbours away from xi, ordered by the new coefficient.
std::vector<TreeVertex> children(TreeVertex const &v);
std::vector<TreeVertex> neighbors(TreeVertex const &v);
/// Height where the geodesics from the two vertices towards xi merge.
int meet_height(TreeVertex const &a, TreeVertex const &b);
int tree_distance(TreeVertex const &a, TreeVertex const &b);

using VertexId = std::int32_t;
using Table = std::vector<VertexId>;

/// Interns vertices to dense ids so that ball restrictions become integer
/// tables. Ids are assigned in first-seen order.
class VertexRegistry
{
  public:
	explicit VertexRegistry(FieldPtr f) : f_(std::move(f)) {}

	FieldPtr const &field() const noexcept { return f_; }
	VertexId intern(TreeVertex const &v);
	VertexId find(TreeVertex const &v) const; // -1 if unknown
	TreeVertex const &vertex(VertexId id) const { return vertices_[std::size_t(id)]; }
	std::size_t size() const noexcept { return vertices_.size(); }

  private:
	struct Hash
	{
		std::size_t operator()(TreeVertex const &v) const noexcept
		{
			return v.x.hash() * 31u + std::size_t(v.h);
		}
	};

	FieldPtr f_;
	std::vector<TreeVertex> vertices_;
	std::unordered_map<TreeVertex, VertexId, Hash> ids_;
};

/// Vertices within `radius` of `center`, in breadth-first order (parent
/// first, then children by coefficient), interned in `reg`.
std::vector<VertexId> ball(VertexRegistry &reg, TreeVertex const &center, int radius);

/// A finite vertex set with positions, the domain of restriction tables.
/// A table lists the (global) image id of each domain vertex in order.
class BallDomain
{
  public:
	BallDomain(VertexRegistry &reg, TreeVertex const &center, int radius);

	VertexRegistry &registry() const noexcept { return *reg_; }
	int radius() const noexcept { return radius_; }
	std::vector<VertexId> const &ids() const noexcept { return ids_; }
	std::size_t size() const noexcept { return ids_.size(); }
	/// Position of a vertex in the domain, or -1.
	int position(VertexId id) const;
	bool contains(VertexId id) const { return position(id) >= 0; }

	Table identity() const { return ids_; }
	Table table_of(std::function<TreeVertex(TreeVertex const &)> const &g) const;
	/// outer after inner; inner must map the domain into itself.
	Table compose(Table const &outer, Table const &inner) const;
	/// Restriction of a table of this domain to a smaller concentric ball.
	Table restrict(Table const &t, BallDomain const &smaller) const;

  private:
	VertexRegistry *reg_;
	int radius_;
	std::vector<VertexId> ids_;
	std::vector<int> pos_; // indexed by VertexId
};

struct TableHash
{
	std::size_t operator()(Table const &t) const noexcept;
};

struct ClosureResult
{
	std::vector<Table> tables; // sorted
	bool saturated = false;
	int rounds = 0; // word length reached
};

/// Subgroup of Sym(domain) generated by tables that preserve the domain.
/// Breadth-first in word length; stops after `word_budget` rounds.
ClosureResult closure(BallDomain const &dom, std::vector<Table> const &generators,
                      int word_budget = 1 << 30, std::size_t limit = 20'000'000);

} // namespace kmtk
