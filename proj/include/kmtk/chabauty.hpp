#pragma once

#include "kmtk/laurent_matrix.hpp"
#include "kmtk/report.hpp"
#include "kmtk/tree.hpp"
#include "kmtk/treewall.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace kmtk {

/// Shared vertex registry and the concentric balls B_0 ⊂ ... ⊂ B_N about
/// v_0, so that tables from different subgroups are comparable.
class ObservationContext
{
  public:
	ObservationContext(FieldPtr f, int N);
	ObservationContext(ObservationContext const &) = delete;
	ObservationContext &operator=(ObservationContext const &) = delete;

	FieldPtr const &field() const noexcept { return f_; }
	int level() const noexcept { return N_; }
	VertexRegistry &registry() noexcept { return reg_; }
	BallDomain const &domain(int M) const { return *domains_.at(std::size_t(M)); }
	TreeVertex origin() const { return TreeVertex(0, Series(f_)); }

  private:
	FieldPtr f_;
	int N_;
	VertexRegistry reg_;
	std::vector<std::unique_ptr<BallDomain>> domains_;
};

/// {h|B_N : h in H, h(v_0) in B_N} for a closed subgroup H, as sorted tables
/// over domain(level).
struct SubgroupObservation
{
	int level = 0;
	std::vector<Table> tables;
	bool saturated = true;

	std::size_t size() const noexcept { return tables.size(); }
	bool contains(Table const &t) const;
	bool operator==(SubgroupObservation const &o) const
	{
		return level == o.level && tables == o.tables;
	}
};

/// Closure of generators that fix v_0, up to `word_budget` letters.
SubgroupObservation observe(ObservationContext &ctx, int level,
                            std::vector<VertexMap> const &generators, int word_budget = 1 << 30);
SubgroupObservation observe(ObservationContext &ctx, int level,
                            std::vector<LaurentMatrix> const &generators,
                            int word_budget = 1 << 30);

/// {rep o k}: stabilizer generators fix v_0, one representative per vertex
/// of the orbit of v_0 inside B_level.
SubgroupObservation observe_cosets(ObservationContext &ctx, int level,
                                   std::vector<VertexMap> const &stabilizer,
                                   std::vector<VertexMap> const &representatives);

/// The level-M observation obtained from a level-N one.
SubgroupObservation restrict(ObservationContext &ctx, SubgroupObservation const &obs, int M);

enum class Convergence
{
	Converged,
	NotConverged,
	Unknown
};

char const *to_string(Convergence c);

struct ConvergenceVerdict
{
	Convergence verdict = Convergence::Unknown;
	std::optional<int> n0; // first index from which obs_n == target
	bool target_realized = false;   // every target table present from n0 on
	bool persistent_in_target = false; // tables of the tail all lie in the target
};

/// Levelwise stabilization: converged iff obs_n == target for all n >= n0,
/// with n0 within the sequence.
ConvergenceVerdict geometric_converges(std::vector<SubgroupObservation> const &seq,
                                       SubgroupObservation const &target);

/// Observation of tau^n SL_2(F_q[[t]]) tau^-n for n = 0..n_max against the
/// observation of D_xi. Throws PrecisionError when window < 2 n_max + N.
Check conjugate_stabilizer_limit(FieldPtr const &f, int N, int n_max, int window);

/// Observation of <tau^-n u tau^n> for u = upper(x), nu(x) = 0, converges to
/// the trivial group.
Check unipotent_contraction(FieldPtr const &f, int N, int n_max, int window);

/// Conjugates tau^-n g tau^n of g = Scaling(s) o Translation(u) stay in the
/// compact family Scaling o V_{-min(0, nu(u))}.
Check boundedness_check(TreeWallElement const &g, int n_max, int N);

/// Matrix conjugation by diag(t^-1, t) against conj_by_tau on unipotents.
Check conjugation_exactness_check(FieldPtr const &f, int N, int window);

} // namespace kmtk
