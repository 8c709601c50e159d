#include "kmtk/chabauty.hpp"

#include "kmtk/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace kmtk {

ObservationContext::ObservationContext(FieldPtr f, int N) : f_(f), N_(N), reg_(f)
{
	require(N >= 0, "observation level must be >= 0");
	for (int M = 0; M <= N; ++M)
		domains_.push_back(std::make_unique<BallDomain>(reg_, origin(), M));
}

bool SubgroupObservation::contains(Table const &t) const
{
	return std::binary_search(tables.begin(), tables.end(), t);
}

namespace {

VertexMap matrix_map(LaurentMatrix g)
{
	return [g = std::move(g)](TreeVertex const &v) { return act(g, v); };
}

std::vector<VertexMap> matrix_maps(std::vector<LaurentMatrix> const &gs)
{
	std::vector<VertexMap> out;
	for (auto const &g : gs)
		out.push_back(matrix_map(g));
	return out;
}

} // namespace

SubgroupObservation observe(ObservationContext &ctx, int level,
                            std::vector<VertexMap> const &generators, int word_budget)
{
	auto const &dom = ctx.domain(level);
	std::vector<Table> tabs;
	for (auto const &g : generators)
	{
		Table t = dom.table_of(g);
		require(t.front() == dom.ids().front(), "observe: generator moves v_0");
		tabs.push_back(std::move(t));
	}
	auto cl = closure(dom, tabs, word_budget);
	return {level, std::move(cl.tables), cl.saturated};
}

SubgroupObservation observe(ObservationContext &ctx, int level,
                            std::vector<LaurentMatrix> const &generators, int word_budget)
{
	return observe(ctx, level, matrix_maps(generators), word_budget);
}

SubgroupObservation observe_cosets(ObservationContext &ctx, int level,
                                   std::vector<VertexMap> const &stabilizer,
                                   std::vector<VertexMap> const &representatives)
{
	auto const &dom = ctx.domain(level);
	auto stab = observe(ctx, level, stabilizer);
	std::set<VertexId> images;
	std::vector<Table> out;
	for (auto const &r : representatives)
	{
		Table rt = dom.table_of(r);
		require(images.insert(rt.front()).second,
		        "two coset representatives send v_0 to the same vertex");
		for (auto const &k : stab.tables)
			out.push_back(dom.compose(rt, k));
	}
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return {level, std::move(out), stab.saturated};
}

SubgroupObservation restrict(ObservationContext &ctx, SubgroupObservation const &obs, int M)
{
	require(M <= obs.level, "restriction to a larger ball");
	auto const &big = ctx.domain(obs.level);
	auto const &small = ctx.domain(M);
	SubgroupObservation out{M, {}, obs.saturated};
	for (auto const &t : obs.tables)
		if (small.contains(t.front()))
			out.tables.push_back(big.restrict(t, small));
	std::sort(out.tables.begin(), out.tables.end());
	out.tables.erase(std::unique(out.tables.begin(), out.tables.end()), out.tables.end());
	return out;
}

char const *to_string(Convergence c)
{
	switch (c)
	{
	case Convergence::Converged:
		return "Converged";
	case Convergence::NotConverged:
		return "NotConverged";
	case Convergence::Unknown:
		return "Unknown";
	}
	return "?";
}

ConvergenceVerdict geometric_converges(std::vector<SubgroupObservation> const &seq,
                                       SubgroupObservation const &target)
{
	ConvergenceVerdict v;
	for (auto const &o : seq)
		require(o.level == target.level, "observations at different levels");
	bool saturated = target.saturated &&
	                 std::all_of(seq.begin(), seq.end(), [](auto const &o) { return o.saturated; });

	std::size_t n0 = seq.size();
	while (n0 > 0 && seq[n0 - 1] == target)
		--n0;
	if (n0 < seq.size())
		v.n0 = int(n0);

	if (!seq.empty())
	{
		// Condition (2): every target table is realized along the tail.
		// Condition (1): tables persisting to the end of the tail lie in the target.
		std::size_t from = v.n0 ? std::size_t(*v.n0) : seq.size() - 1;
		v.target_realized = std::all_of(target.tables.begin(), target.tables.end(), [&](auto const &t) {
			for (std::size_t n = from; n < seq.size(); ++n)
				if (!seq[n].contains(t))
					return false;
			return true;
		});
		auto const &last = seq.back();
		v.persistent_in_target = std::all_of(last.tables.begin(), last.tables.end(),
		                                     [&](auto const &t) { return target.contains(t); });
	}

	if (!saturated)
		v.verdict = Convergence::Unknown;
	else if (v.n0 && v.target_realized && v.persistent_in_target)
		v.verdict = Convergence::Converged;
	else
		v.verdict = Convergence::NotConverged;
	return v;
}

// --- the limit experiment ----------------------------------------------------

namespace {

struct Model
{
	FieldPtr f;
	int window;

	Series w(Series s) const { return s.with_precision(window); }
	Series mono(int c, int k) const { return w(Series::monomial(f, c, k)); }
	Series zero() const { return w(Series(f)); }
	Series one() const { return mono(1, 0); }

	LaurentMatrix upper(Series x) const { return {one(), w(std::move(x)), zero(), one()}; }
	LaurentMatrix lower(Series y) const { return {one(), zero(), w(std::move(y)), one()}; }
	LaurentMatrix torus(Series a) const
	{
		Series ai = a.inverse(window);
		return {w(std::move(a)), zero(), zero(), w(std::move(ai))};
	}
	LaurentMatrix conj(LaurentMatrix const &k, int n) const
	{
		return LaurentMatrix::tau_power(f, n) * k * LaurentMatrix::tau_power(f, -n);
	}

	std::vector<LaurentMatrix> torus_generators(int N) const
	{
		std::vector<LaurentMatrix> out;
		for (int c = 1; c < f->q(); ++c)
		{
			if (c != 1)
				out.push_back(torus(Series::monomial(f, c, 0)));
			for (int j = 1; j < N; ++j)
				out.push_back(torus(Series::one(f) + Series::monomial(f, c, j)));
		}
		return out;
	}

	/// Generators of tau^n SL_2(O) tau^-n ∩ SL_2(O), each built inside
	/// SL_2(O) and conjugated exactly. Entries of degree >= N act trivially
	/// on B_N and are omitted.
	std::vector<LaurentMatrix> stabilizer_generators(int N, int n) const
	{
		std::vector<LaurentMatrix> out;
		for (int c = 1; c < f->q(); ++c)
		{
			for (int j = 0; j < N; ++j)
				out.push_back(conj(upper(Series::monomial(f, c, j + 2 * n)), n));
			for (int j = 2 * n; j < N; ++j)
				out.push_back(conj(lower(Series::monomial(f, c, j - 2 * n)), n));
		}
		for (auto const &t : torus_generators(N))
			out.push_back(conj(t, n));
		return out;
	}
};

/// All series with support in [lo, 0).
std::vector<Series> residues(FieldPtr const &f, int lo)
{
	std::vector<Series> out{Series(f)};
	for (int k = lo; k < 0; ++k)
	{
		std::vector<Series> next;
		for (auto const &x : out)
			for (int c = 0; c < f->q(); ++c)
				next.push_back(x + Series::monomial(f, c, k));
		out = std::move(next);
	}
	return out;
}

std::vector<Series> residues_between(FieldPtr const &f, int lo, int hi)
{
	std::vector<Series> out;
	for (auto const &x : residues(f, lo - hi))
		out.push_back(x.shifted(hi));
	return out;
}

} // namespace

Check conjugate_stabilizer_limit(FieldPtr const &f, int N, int n_max, int window)
{
	Check ck("conjugate_stabilizer_limit",
	         "tau^n Stab(v) tau^-n converges to D_xi in the Chabauty topology");
	require(N >= 1 && n_max >= 0, "need N >= 1 and n_max >= 0");
	if (window < 2 * n_max + N)
		throw PrecisionError("precision window " + std::to_string(window) + " < 2*n_max + N = " +
		                     std::to_string(2 * n_max + N));
	Model md{f, window};
	ObservationContext ctx(f, N);
	auto const &dom = ctx.domain(N);
	TreeVertex v0 = ctx.origin();

	std::vector<SubgroupObservation> seq;
	nlohmann::json per_n = nlohmann::json::array();
	for (int n = 0; n <= n_max; ++n)
	{
		auto stab = md.stabilizer_generators(N, n);
		TreeVertex p(-2 * n, Series(f));

		// Representatives: translations onto the horosphere through v_0, and
		// for small n the images of a full transversal of the sphere.
		std::map<VertexId, LaurentMatrix> reps;
		auto offer = [&](LaurentMatrix const &g) {
			TreeVertex img = act(g, v0);
			VertexId id = ctx.registry().intern(img);
			if (dom.contains(id))
				reps.try_emplace(id, g);
		};
		for (auto const &x : residues(f, -std::min(2 * n, N / 2)))
			offer(md.conj(md.upper(x.shifted(2 * n)), n));
		if (n >= 1 && 4 * n <= N)
		{
			for (auto const &y : residues_between(f, 0, 2 * n))
				offer(md.conj(md.upper(y), n));
			for (auto const &y : residues_between(f, 1, 2 * n))
				offer(md.conj(LaurentMatrix::weyl(f) * md.upper(y), n));
		}

		// The orbit must be the sphere of radius 2n about tau^n v_0, cut by B_N.
		std::set<VertexId> expected, got;
		for (auto id : dom.ids())
			if (tree_distance(ctx.registry().vertex(id), p) == 2 * n)
				expected.insert(id);
		for (auto const &[id, g] : reps)
			got.insert(id);
		ck.expect(got == expected, "orbit of v_0 at n = " + std::to_string(n) + " has " +
		                               std::to_string(got.size()) + " vertices, expected " +
		                               std::to_string(expected.size()));

		std::vector<VertexMap> rep_maps;
		for (auto const &[id, g] : reps)
			rep_maps.push_back(matrix_map(g));
		seq.push_back(observe_cosets(ctx, N, matrix_maps(stab), rep_maps));
		per_n.push_back({{"n", n}, {"orbit", got.size()}, {"tables", seq.back().size()}});
	}

	// D_xi: upper triangular with unit diagonal entries.
	std::vector<LaurentMatrix> d_stab;
	for (int c = 1; c < f->q(); ++c)
		for (int j = 0; j < N; ++j)
			d_stab.push_back(md.upper(Series::monomial(f, c, j)));
	for (auto const &t : md.torus_generators(N))
		d_stab.push_back(t);
	std::vector<VertexMap> d_reps;
	for (auto const &x : residues(f, -(N / 2)))
		d_reps.push_back(matrix_map(md.upper(x)));
	auto target = observe_cosets(ctx, N, matrix_maps(d_stab), d_reps);

	auto verdict = geometric_converges(seq, target);
	ck.expect(verdict.verdict == Convergence::Converged,
	          std::string("sequence verdict ") + to_string(verdict.verdict));

	// The n = 0 term is the vertex stabilizer itself, built without tau.
	std::vector<LaurentMatrix> k_gens;
	for (int c = 1; c < f->q(); ++c)
		for (int j = 0; j < N; ++j)
		{
			k_gens.push_back(md.upper(Series::monomial(f, c, j)));
			k_gens.push_back(md.lower(Series::monomial(f, c, j)));
		}
	for (auto const &t : md.torus_generators(N))
		k_gens.push_back(t);
	ck.expect(observe(ctx, N, k_gens) == seq.front(), "n = 0 term differs from Stab(v_0)");

	// K_L and each V_m end up inside the conjugates.
	auto torus_obs = observe(ctx, N, md.torus_generators(N));
	for (std::size_t n = 0; n < seq.size(); ++n)
		for (auto const &t : torus_obs.tables)
			ck.expect(seq[n].contains(t), "K_L not inside the conjugate at n = " + std::to_string(n));
	nlohmann::json v_entry = nlohmann::json::object();
	for (int m = 0; 2 * m <= N; ++m)
	{
		std::vector<Table> vt;
		for (auto const &x : residues(f, -m))
			for (auto const &y : residues_between(f, 0, N))
				vt.push_back(dom.table_of(matrix_map(md.upper(x + y))));
		std::size_t from = seq.size();
		while (from > 0 && std::all_of(vt.begin(), vt.end(),
		                               [&](auto const &t) { return seq[from - 1].contains(t); }))
			--from;
		ck.expect(from < seq.size(), "V_" + std::to_string(m) + " never inside the conjugates");
		ck.expect(int(from) <= (m + 1) / 2,
		          "V_" + std::to_string(m) + " enters only at n = " + std::to_string(from));
		v_entry[std::to_string(m)] = from;
	}

	// Monotone consistency: one level down, observing directly agrees with
	// restricting.
	if (N >= 2)
	{
		auto t_small = restrict(ctx, target, N - 1);
		std::vector<VertexMap> d_reps_small;
		for (auto const &x : residues(f, -((N - 1) / 2)))
			d_reps_small.push_back(matrix_map(md.upper(x)));
		std::vector<LaurentMatrix> d_stab_small;
		for (int c = 1; c < f->q(); ++c)
			for (int j = 0; j < N - 1; ++j)
				d_stab_small.push_back(md.upper(Series::monomial(f, c, j)));
		for (auto const &t : md.torus_generators(N - 1))
			d_stab_small.push_back(t);
		ck.expect(observe_cosets(ctx, N - 1, matrix_maps(d_stab_small), d_reps_small) == t_small,
		          "restriction of obs_N(D_xi) differs from obs_(N-1)(D_xi)");
		ck.expect(restrict(ctx, seq.front(), N - 1) == observe(ctx, N - 1, k_gens),
		          "restriction of obs_N(Stab(v_0)) differs from obs_(N-1)");
	}

	ck.details = {{"q", f->q()},
	              {"N", N},
	              {"n_max", n_max},
	              {"window", window},
	              {"verdict", to_string(verdict.verdict)},
	              {"n0", verdict.n0 ? nlohmann::json(*verdict.n0) : nlohmann::json(nullptr)},
	              {"target_tables", target.size()},
	              {"per_n", per_n},
	              {"V_m_inside_from", v_entry}};
	return ck;
}

Check unipotent_contraction(FieldPtr const &f, int N, int n_max, int window)
{
	Check ck("unipotent_contraction", "tau^-n u tau^n converges to the identity");
	require(N >= 1 && n_max >= 0, "need N >= 1 and n_max >= 0");
	if (window < 2 * n_max + N)
		throw PrecisionError("precision window too small for the requested n_max");
	Model md{f, window};
	ObservationContext ctx(f, N);
	auto const &dom = ctx.domain(N);
	Series x = Series::one(f) + Series::monomial(f, 1, 1);

	std::vector<SubgroupObservation> seq;
	for (int n = 0; n <= n_max; ++n)
	{
		auto g = md.conj(md.upper(x), -n);
		seq.push_back(observe(ctx, N, std::vector<LaurentMatrix>{g}));
		// The abstract model gives the same action.
		auto tw = conj_by_tau(TreeWallElement::translation(x), -n);
		ck.expect(dom.table_of(matrix_map(g)) ==
		              dom.table_of([&](TreeVertex const &v) { return tw.act(v); }),
		          "matrix and tree-wall conjugates differ at n = " + std::to_string(n));
	}
	SubgroupObservation trivial{N, {dom.identity()}, true};
	auto verdict = geometric_converges(seq, trivial);
	ck.expect(verdict.verdict == Convergence::Converged,
	          std::string("sequence verdict ") + to_string(verdict.verdict));
	int expected = (N + 1) / 2;
	ck.expect(verdict.n0 && *verdict.n0 == std::min(expected, n_max + 1),
	          "threshold differs from ceil(N/2)");
	ck.details = {{"q", f->q()},
	              {"N", N},
	              {"n_max", n_max},
	              {"verdict", to_string(verdict.verdict)},
	              {"n0", verdict.n0 ? nlohmann::json(*verdict.n0) : nlohmann::json(nullptr)}};
	return ck;
}

Check boundedness_check(TreeWallElement const &g, int n_max, int N)
{
	Check ck("boundedness", "tau^-n g tau^n stays bounded for g in D_xi");
	require(g.tau_exponent() == 0, "g moves horospheres: not in D_xi");
	auto f = g.field();
	ObservationContext ctx(f, N);
	auto const &dom = ctx.domain(N);

	int v = g.shift().is_known_zero() ? 0 : std::min(0, g.shift().valuation());
	std::vector<VertexMap> stab, reps;
	for (int c = 1; c < f->q(); ++c)
	{
		if (c != 1)
			stab.push_back([s = TreeWallElement::scaling(Series::monomial(f, c, 0))](TreeVertex const &x) {
				return s.act(x);
			});
		for (int j = 1; j < N; ++j)
			stab.push_back([s = TreeWallElement::scaling(Series::one(f) + Series::monomial(f, c, j))](
			                   TreeVertex const &x) { return s.act(x); });
		for (int j = 0; j < N; ++j)
			stab.push_back([t = TreeWallElement::translation(Series::monomial(f, c, j))](
			                   TreeVertex const &x) { return t.act(x); });
	}
	for (auto const &x : residues(f, v))
		reps.push_back([t = TreeWallElement::translation(x)](TreeVertex const &y) { return t.act(y); });
	auto family = observe_cosets(ctx, N, stab, reps);

	nlohmann::json vals = nlohmann::json::array();
	for (int n = 0; n <= n_max; ++n)
	{
		auto c = conj_by_tau(g, -n);
		Table t = dom.table_of([&c](TreeVertex const &x) { return c.act(x); });
		ck.expect(family.contains(t), "conjugate escapes the family at n = " + std::to_string(n));
		vals.push_back(c.shift().is_known_zero() ? nlohmann::json(nullptr)
		                                         : nlohmann::json(c.shift().valuation()));
	}
	ck.details = {{"element", g.str()},
	              {"N", N},
	              {"n_max", n_max},
	              {"family_valuation", v},
	              {"family_tables", family.size()},
	              {"conjugate_valuations", vals}};
	return ck;
}

Check conjugation_exactness_check(FieldPtr const &f, int N, int window)
{
	Check ck("conjugation_exactness", "conjugation by tau shifts corner valuations by 2");
	Model md{f, window};
	ObservationContext ctx(f, N);
	auto const &dom = ctx.domain(N);
	for (int m = -3; m <= 3; ++m)
		for (int k = -3; k <= 3; ++k)
			for (int c = 1; c < f->q(); ++c)
			{
				auto x = Series::monomial(f, c, k);
				auto up = md.conj(md.upper(x), m);
				auto lo = md.conj(md.lower(x), m);
				ck.expect(up.b.valuation() == k - 2 * m, "upper corner shift");
				ck.expect(lo.c.valuation() == k + 2 * m, "lower corner shift");
				ck.expect(up.a == md.one() && up.d == md.one(), "diagonal changed");
				if (window - 2 * std::abs(m) - std::max(0, -k) < N + 1 || k - 2 * m < -N)
					continue;
				auto tw = conj_by_tau(TreeWallElement::translation(x), m);
				ck.expect(dom.table_of(matrix_map(up)) ==
				              dom.table_of([&](TreeVertex const &v) { return tw.act(v); }),
				          "matrix and tree-wall conjugation disagree");
			}
	ck.details = {{"N", N}, {"window", window}};
	return ck;
}

} // namespace kmtk
