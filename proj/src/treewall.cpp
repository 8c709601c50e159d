#include "kmtk/treewall.hpp"

#include "kmtk/error.hpp"
#include "kmtk/random.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace kmtk {

// --- elements -------------------------------------------------------------

TreeWallElement TreeWallElement::identity(FieldPtr f)
{
	return TreeWallElement(0, Series::one(f), Series(f));
}

TreeWallElement TreeWallElement::translation(Series u)
{
	auto f = u.field();
	return TreeWallElement(0, Series::one(f), std::move(u));
}

TreeWallElement TreeWallElement::tau_power(FieldPtr f, int m)
{
	return TreeWallElement(m, Series::one(f), Series(f));
}

TreeWallElement TreeWallElement::scaling(Series s)
{
	require(s.valuation() == 0, "scaling needs a unit series (valuation 0)");
	auto f = s.field();
	return TreeWallElement(0, std::move(s), Series(f));
}

TreeWallElement TreeWallElement::general(int m, Series s, Series u)
{
	require(s.valuation() == 0, "scaling part must be a unit series");
	return TreeWallElement(m, std::move(s), std::move(u));
}

bool TreeWallElement::is_translation() const
{
	return m_ == 0 && s_ == Series::one(s_.field());
}

bool TreeWallElement::is_scaling() const
{
	return m_ == 0 && u_.is_known_zero();
}

TreeVertex TreeWallElement::act(TreeVertex const &v) const
{
	return TreeVertex(v.h - 2 * m_, (s_ * v.x).shifted(-2 * m_) + u_);
}

TreeWallElement TreeWallElement::operator*(TreeWallElement const &o) const
{
	// x -> t^(-2(m1+m2)) s1 s2 x + (t^(-2 m1) s1 u2 + u1).
	return TreeWallElement(m_ + o.m_, s_ * o.s_, (s_ * o.u_).shifted(-2 * m_) + u_);
}

TreeWallElement TreeWallElement::inverse(int rel_precision) const
{
	Series si = s_.inverse(rel_precision);
	return TreeWallElement(-m_, si, -(si * u_).shifted(2 * m_));
}

std::string TreeWallElement::str() const
{
	if (is_translation())
		return "Translation(" + u_.str() + ")";
	if (m_ != 0 && s_ == Series::one(s_.field()) && u_.is_known_zero())
		return "TauPower(" + std::to_string(m_) + ")";
	if (is_scaling())
		return "Scaling(" + s_.str() + ")";
	return "Affine(m=" + std::to_string(m_) + ", s=" + s_.str() + ", u=" + u_.str() + ")";
}

TreeVertex parametrized_vertex(FieldPtr f, int N, std::vector<int> const &coeffs)
{
	int m = int(coeffs.size());
	require(m <= N + 64, "too many root-group coordinates");
	Series x(f);
	for (int j = 0; j < m; ++j)
		x = x + Series::monomial(f, coeffs[std::size_t(j)], -(N - j));
	return TreeVertex(m - N, x);
}

TreeWallElement conj_by_tau(TreeWallElement const &g, int m)
{
	require(g.tau_exponent() == 0, "conj_by_tau expects a translation or a scaling");
	auto f = g.field();
	return TreeWallElement::tau_power(f, m) * g * TreeWallElement::tau_power(f, -m);
}

bool translation_fixes(Series const &u, TreeVertex const &v)
{
	return u.valuation_at_least(v.h);
}

// --- decompositions -------------------------------------------------------

Series random_series(FieldPtr const &f, std::mt19937_64 &rng, int lo, int hi)
{
	std::vector<int> c(std::size_t(std::max(0, hi - lo)));
	for (auto &x : c)
		x = int(uniform_below(rng, std::uint64_t(f->q())));
	return Series::from_coeffs(f, lo, std::move(c));
}

Series random_unit(FieldPtr const &f, std::mt19937_64 &rng, int hi)
{
	Series s = random_series(f, rng, 1, hi);
	int c0 = 1 + int(uniform_below(rng, std::uint64_t(f->q() - 1)));
	return s + Series::monomial(f, c0, 0);
}

DDecomposition decompose_D_xi(FieldPtr f, VertexMap const &d, int depth)
{
	require(depth >= 1, "decomposition depth must be >= 1");
	// Horospheres are checked along the line and its neighbours; a full-ball
	// check is left to callers that hold a table.
	for (int h = -depth; h <= depth; ++h)
	{
		TreeVertex v(h, Series(f));
		for (auto const &w : neighbors(v))
			if (d(w).h != w.h)
				throw PreconditionError("map moves the horosphere through " + w.str() +
				                        ": not in D_xi");
	}

	// Walk up the line: at each step the remainder fixes (h, 0), so it sends
	// (h+1, 0) to a child (h+1, c t^h) and the next monomial is c t^h.
	Series u = d(TreeVertex(-depth, Series(f))).x;
	for (int h = -depth; h < depth; ++h)
	{
		TreeVertex img = d(TreeVertex(h + 1, Series(f)));
		Series y = img.x - u.truncated(h + 1);
		if (!y.valuation_at_least(h))
			throw ModelError("remainder does not fix the line below height " +
			                 std::to_string(h + 1));
		u = u + y;
	}
	u = u.truncated(depth);
	auto shift = TreeWallElement::translation(-u);
	return {u, [d, shift](TreeVertex const &v) { return shift.act(d(v)); }};
}

DDecompositionExact decompose_D_xi(TreeWallElement const &d, int depth)
{
	require(d.tau_exponent() == 0, "element moves horospheres: not in D_xi");
	auto gen = decompose_D_xi(d.field(), [&d](TreeVertex const &v) { return d.act(v); }, depth);
	return {gen.u, TreeWallElement::translation(-gen.u) * d};
}

PDecomposition decompose_P_xi(TreeWallElement const &g, int depth)
{
	auto const &f = g.field();
	int delta = busemann(g.act(TreeVertex(0, Series(f))));
	for (int h = -depth; h <= depth; ++h)
		require(busemann(g.act(TreeVertex(h, Series(f)))) - h == delta,
		        "element does not fix the germ of xi");
	require(delta % 2 == 0, "odd Busemann displacement flips types; not in the model");
	int m = -delta / 2;
	auto dec = decompose_D_xi(TreeWallElement::tau_power(f, -m) * g, depth);
	return {dec.remainder, m, dec.u};
}

// --- audited properties ---------------------------------------------------

namespace {

std::vector<Series> monomials(FieldPtr const &f, int lo, int hi)
{
	std::vector<Series> out;
	for (int k = lo; k <= hi; ++k)
		for (int c = 1; c < f->q(); ++c)
			out.push_back(Series::monomial(f, c, k));
	return out;
}

TreeVertex origin(FieldPtr const &f)
{
	return TreeVertex(0, Series(f));
}

// Pointwise comparison; images are not interned, so the registry stays bounded.
bool same_action(BallDomain const &dom, VertexMap const &a, VertexMap const &b)
{
	for (VertexId id : dom.ids())
	{
		TreeVertex const &v = dom.registry().vertex(id);
		if (!(a(v) == b(v)))
			return false;
	}
	return true;
}

VertexMap as_map(TreeWallElement g)
{
	return [g = std::move(g)](TreeVertex const &v) { return g.act(v); };
}

} // namespace

Check fixator_law_check(FieldPtr const &f, int lo, int hi, int depth)
{
	Check ck("fixator_law", "Translation(u) fixes v iff nu(u) >= h(v)");
	VertexRegistry reg(f);
	BallDomain dom(reg, origin(f), depth);
	for (auto const &u : monomials(f, lo, hi))
	{
		auto g = TreeWallElement::translation(u);
		for (auto id : dom.ids())
		{
			TreeVertex const &v = reg.vertex(id);
			bool fixed = g.act(v) == v;
			ck.expect(fixed == (u.valuation() >= v.h),
			          "u = " + u.str() + " at " + v.str());
		}
	}
	ck.details = {{"window", {lo, hi}}, {"depth", depth}, {"vertices", dom.size()}};
	return ck;
}

Check horoball_check(FieldPtr const &f, int n, int depth, int window_hi)
{
	Check ck("horoball", "V_n acts trivially on the horoball and simply transitively on the "
	                     "edges leaving it");
	VertexRegistry reg(f);
	BallDomain dom(reg, origin(f), depth);
	auto gens = monomials(f, -n, window_hi);

	std::size_t inside = 0, horosphere = 0;
	for (auto id : dom.ids())
	{
		TreeVertex v = reg.vertex(id);
		if (v.h <= -n)
		{
			++inside;
			for (auto const &u : gens)
				ck.expect(TreeWallElement::translation(u).act(v) == v,
				          "generator " + u.str() + " moves " + v.str());
		}
		if (v.h != -n)
			continue;
		++horosphere;
		// U_{a_n} = {c t^-n}: each element fixes v, and c -> image of the
		// 0-child is a bijection onto the q children.
		auto kids = children(v);
		std::set<std::size_t> hit;
		for (int c = 0; c < f->q(); ++c)
		{
			auto g = TreeWallElement::translation(Series::monomial(f, c, -n));
			ck.expect(g.act(v) == v, "U_{a_n} element moves horosphere vertex " + v.str());
			auto img = g.act(kids[0]);
			auto it = std::find(kids.begin(), kids.end(), img);
			ck.expect(it != kids.end(), "image of an upward edge is not upward at " + v.str());
			if (it != kids.end())
				hit.insert(std::size_t(it - kids.begin()));
			if (c != 0)
				for (auto const &k : kids)
					ck.expect(g.act(k) != k, "nontrivial root element fixes an upward edge at " +
					                             v.str());
		}
		ck.expect(hit.size() == std::size_t(f->q()), "orbit of an upward edge has size " +
		                                                 std::to_string(hit.size()));
	}
	ck.expect(inside > 0 && horosphere > 0, "ball misses the horoball; raise the depth");
	ck.details = {{"n", n},
	              {"depth", depth},
	              {"horoball_vertices", inside},
	              {"horosphere_vertices", horosphere},
	              {"generators", gens.size()}};
	return ck;
}

Check intersection_check(FieldPtr const &f, int n_max, int depth, int lo, int hi,
                         int samples, std::uint64_t seed)
{
	Check ck("intersections", "the V_n intersect trivially; ray fixators lie in V_n");
	require(n_max >= 0 && n_max <= depth, "need 0 <= n_max <= depth");
	std::mt19937_64 rng(seed);
	std::vector<Series> us = monomials(f, lo, hi);
	for (int k = 0; k < samples; ++k)
		us.push_back(random_series(f, rng, uniform_int(rng, lo, hi), hi + 1));
	us.push_back(Series(f));

	for (auto const &u : us)
	{
		auto g = TreeWallElement::translation(u);
		auto fixes_line = [&](int h) {
			TreeVertex v(h, Series(f));
			return g.act(v) == v;
		};
		// V_{-n} is the fixator of v_{-n} = (n, 0).
		bool in_all = true;
		for (int n = 0; n <= n_max; ++n)
			in_all = in_all && fixes_line(n);
		ck.expect(in_all == u.valuation_at_least(n_max),
		          "membership in all V_-n, n <= N_max, for u = " + u.str());
		bool in_window = true;
		for (int n = 0; n <= depth; ++n)
			in_window = in_window && fixes_line(n);
		if (depth > hi)
			ck.expect(!in_window || u.is_known_zero(),
			          "nonzero u = " + u.str() + " lies in every V_-n of the window");

		// The ray [v_n xi) is {(h, 0) : h <= -n}.
		for (int n = -depth; n <= depth; ++n)
		{
			bool fixes_ray = true;
			for (int h = -depth; h <= -n; ++h)
				fixes_ray = fixes_ray && fixes_line(h);
			if (fixes_ray)
				ck.expect(u.valuation_at_least(-n),
				          "u = " + u.str() + " fixes [v_" + std::to_string(n) +
				              " xi) but is not in V_" + std::to_string(n));
			else
				ck.expect(!u.valuation_at_least(-n),
				          "u = " + u.str() + " in V_" + std::to_string(n) + " moves the ray");
		}
	}
	ck.details = {{"n_max", n_max}, {"depth", depth}, {"window", {lo, hi}}, {"translations", us.size()}};
	return ck;
}

Check abelian_exponent_check(FieldPtr const &f, int lo, int hi, int samples,
                             std::uint64_t seed)
{
	Check ck("abelian_exponent_p", "translations form an abelian group of exponent p");
	std::mt19937_64 rng(seed);
	VertexRegistry reg(f);
	BallDomain dom(reg, origin(f), 3);
	for (int k = 0; k < samples; ++k)
	{
		Series u = random_series(f, rng, lo, hi + 1), v = random_series(f, rng, lo, hi + 1);
		auto gu = TreeWallElement::translation(u), gv = TreeWallElement::translation(v);
		ck.expect(u + v == v + u, "series addition not commutative");
		ck.expect(same_action(dom, as_map(gu * gv), as_map(gv * gu)),
		          "translations do not commute on the ball");
		ck.expect(same_action(dom, as_map(gu * gv), as_map(TreeWallElement::translation(u + v))),
		          "composition is not addition");
		Series pu(f);
		auto power = TreeWallElement::identity(f);
		for (int i = 0; i < f->p(); ++i)
		{
			pu = pu + u;
			power = power * gu;
		}
		ck.expect(pu.is_known_zero(), "p * u != 0 for u = " + u.str());
		ck.expect(same_action(dom, as_map(power), as_map(TreeWallElement::identity(f))),
		          "Translation(u)^p acts nontrivially");
	}
	ck.details = {{"p", f->p()}, {"samples", samples}};
	return ck;
}

Check tau_normalization_check(FieldPtr const &f, int lo, int hi, int depth, int samples,
                              std::uint64_t seed)
{
	Check ck("tau_conjugation", "conjugation by tau multiplies by t^-2");
	std::mt19937_64 rng(seed);
	VertexRegistry reg(f);
	BallDomain dom(reg, origin(f), depth);
	std::vector<Series> us = monomials(f, lo, hi);
	for (int k = 0; k < samples; ++k)
		us.push_back(random_series(f, rng, uniform_int(rng, lo, hi), hi + 1));

	for (int m = -3; m <= 3; ++m)
		for (auto const &u : us)
		{
			auto c = conj_by_tau(TreeWallElement::translation(u), m);
			ck.expect(c.is_translation(), "conjugate is not a translation");
			if (u.is_known_zero())
			{
				ck.expect(c.shift().is_known_zero(), "conjugate of the identity is nontrivial");
				continue;
			}
			ck.expect(c.shift().valuation() == u.valuation() - 2 * m,
			          "valuation shift of u = " + u.str() + " under m = " + std::to_string(m));
			ck.expect(c.shift() == u.shifted(-2 * m), "conjugate differs from t^-2m u");
			// V_n -> V_{n+2m}: nu >= -n maps to nu >= -n-2m, and back.
			int n = -u.valuation();
			ck.expect(c.shift().valuation_at_least(-n - 2 * m), "V_n not mapped into V_n+2m");
			ck.expect(conj_by_tau(c, -m).shift() == u, "conjugation is not invertible");
			if (std::abs(m) <= 1 && u.valuation() >= -depth + 2)
			{
				auto tau = TreeWallElement::tau_power(f, m), taui = TreeWallElement::tau_power(f, -m);
				VertexMap composed = [&](TreeVertex const &v) {
					return tau.act(TreeWallElement::translation(u).act(taui.act(v)));
				};
				ck.expect(same_action(dom, composed, as_map(c)),
				          "composed action differs from the conjugate");
			}
		}
	ck.details = {{"window", {lo, hi}}, {"m_range", {-3, 3}}, {"translations", us.size()}};
	return ck;
}

Check decomposition_check(FieldPtr const &f, int depth, int lo, int hi, int samples,
                          std::uint64_t seed)
{
	Check ck("decompositions", "P_xi = K_L <tau> V_xi with pairwise trivial intersections");
	std::mt19937_64 rng(seed);
	VertexRegistry reg(f);
	BallDomain dom(reg, origin(f), depth);
	auto line_fixed = [&](VertexMap const &k) {
		for (int h = -depth; h <= depth; ++h)
		{
			TreeVertex v(h, Series(f));
			if (!(k(v) == v))
				return false;
		}
		return true;
	};
	auto on_line_and_children = [&](VertexMap const &a, VertexMap const &b) {
		for (int h = -depth; h <= depth; ++h)
			for (auto const &w : neighbors(TreeVertex(h, Series(f))))
				if (!(a(w) == b(w)))
					return false;
		return true;
	};

	std::size_t d_ok = 0, p_ok = 0;
	for (int k = 0; k < samples; ++k)
	{
		Series s = random_unit(f, rng, hi + 1);
		Series u0 = random_series(f, rng, lo, hi + 1);
		auto d = TreeWallElement::scaling(s) * TreeWallElement::translation(u0);

		auto dec = decompose_D_xi(d, depth);
		bool ok = ck.expect(dec.u == (s * u0).truncated(depth),
		                    "D_xi: recovered u differs from s*u0 mod t^depth");
		ok &= ck.expect(line_fixed(as_map(dec.remainder)), "D_xi: remainder moves the line");
		ok &= ck.expect(same_action(dom, as_map(TreeWallElement::translation(dec.u) * dec.remainder),
		                            as_map(d)),
		                "D_xi: recomposition differs on the ball");
		ok &= ck.expect(same_action(dom, as_map(dec.remainder), as_map(TreeWallElement::scaling(s))),
		                "D_xi: remainder is not the scaling part");
		// Any other normalized u changes the remainder on the line.
		auto bumped = TreeWallElement::translation(-(dec.u + Series::monomial(f, 1, depth - 1))) * d;
		ok &= ck.expect(!line_fixed(as_map(bumped)), "D_xi: decomposition is not unique");
		// The generic path on an opaque map agrees.
		auto gen = decompose_D_xi(f, as_map(d), depth);
		ok &= ck.expect(gen.u == dec.u && on_line_and_children(gen.remainder, as_map(dec.remainder)),
		                "D_xi: generic and exact decompositions disagree");
		d_ok += ok;

		int m = uniform_int(rng, -3, 3);
		auto g = TreeWallElement::tau_power(f, m) * d;
		auto pdec = decompose_P_xi(g, depth);
		bool pk = ck.expect(pdec.m == m, "P_xi: tau exponent " + std::to_string(pdec.m) +
		                                     " recovered, expected " + std::to_string(m));
		auto recomposed = TreeWallElement::tau_power(f, pdec.m) *
		                  TreeWallElement::translation(pdec.u) * pdec.remainder;
		pk &= ck.expect(same_action(dom, as_map(recomposed), as_map(g)),
		                "P_xi: recomposition differs on the ball");
		pk &= ck.expect(line_fixed(as_map(pdec.remainder)), "P_xi: remainder moves the line");
		p_ok += pk;
	}

	// Odd displacements are type-flipping and rejected.
	bool rejected = false;
	try
	{
		auto odd = [&](TreeVertex const &v) { return TreeVertex(v.h - 1, v.x); };
		decompose_D_xi(f, odd, depth);
	}
	catch (PreconditionError const &)
	{
		rejected = true;
	}
	ck.expect(rejected, "a height-shifting map was accepted by decompose_D_xi");

	// <tau> meets K_L and V trivially; K_L meets V trivially on the ball.
	for (int m = -3; m <= 3; ++m)
	{
		if (m == 0)
			continue;
		auto t = TreeWallElement::tau_power(f, m);
		ck.expect(!(t.act(origin(f)) == origin(f)), "tau^m fixes v_0");
		ck.expect(t.act(origin(f)).h != 0, "tau^m preserves horospheres");
	}
	for (int k = 0; k < 50; ++k)
	{
		Series u = random_series(f, rng, lo, depth);
		if (u.is_known_zero())
			continue;
		ck.expect(!line_fixed(as_map(TreeWallElement::translation(u))),
		          "nonzero translation mod t^depth fixes the line");
	}

	ck.details = {{"depth", depth},
	              {"window", {lo, hi}},
	              {"samples", samples},
	              {"D_xi_round_trips", d_ok},
	              {"P_xi_round_trips", p_ok}};
	return ck;
}

// --- Sylow structure --------------------------------------------------------

namespace {

Table inverse_table(BallDomain const &dom, Table const &t)
{
	Table inv(t.size());
	for (std::size_t i = 0; i < t.size(); ++i)
		inv[std::size_t(dom.position(t[i]))] = dom.ids()[i];
	return inv;
}

bool is_p_power(std::size_t n, int p)
{
	while (n > 1 && n % std::size_t(p) == 0)
		n /= std::size_t(p);
	return n == 1;
}

} // namespace

Check sylow_ball_check(FieldPtr const &f, int depth)
{
	Check ck("sylow", "the Iwahori subgroup is the normalizer of its unique pro-p Sylow "
	                  "subgroup, a semidirect product with the torus");
	require(depth >= 1, "depth must be >= 1");
	VertexRegistry reg(f);
	BallDomain dom(reg, origin(f), depth);
	auto table = [&](LaurentMatrix const &g) {
		return dom.table_of([&g](TreeVertex const &v) { return act(g, v); });
	};

	// Upper root groups over O, lower over tO: they generate the pro-p
	// radical of the Iwahori subgroup of [v_0, v_1].
	std::vector<LaurentMatrix> u_mats;
	for (int c = 1; c < f->q(); ++c)
	{
		for (int k = 0; k <= depth; ++k)
			u_mats.push_back(LaurentMatrix::upper(Series::monomial(f, c, k)));
		for (int k = 1; k <= depth + 1; ++k)
			u_mats.push_back(LaurentMatrix::lower(Series::monomial(f, c, k)));
	}
	std::vector<Table> u_gens, s_gens;
	for (auto const &g : u_mats)
		u_gens.push_back(table(g));
	for (int c = 1; c < f->q(); ++c)
		s_gens.push_back(table(LaurentMatrix::diagonal(Series::monomial(f, c, 0), Series::one(f))));

	auto U = closure(dom, u_gens);
	auto S = closure(dom, s_gens);
	std::vector<Table> b_gens = u_gens;
	b_gens.insert(b_gens.end(), s_gens.begin(), s_gens.end());
	auto B = closure(dom, b_gens);

	std::unordered_set<Table, TableHash> u_set(U.tables.begin(), U.tables.end());
	int p = f->p();

	ck.expect(is_p_power(U.tables.size(), p), "|U_N| = " + std::to_string(U.tables.size()) +
	                                             " is not a power of p");
	ck.expect(S.tables.size() % std::size_t(p) != 0, "|S_N| divisible by p");
	ck.expect(S.tables.size() == std::size_t(f->q() - 1),
	          "|S_N| = " + std::to_string(S.tables.size()) + ", expected q-1");
	ck.expect(B.tables.size() == U.tables.size() * S.tables.size(), "|B_N| != |S_N| |U_N|");
	std::size_t meet = 0;
	for (auto const &s : S.tables)
		meet += u_set.count(s);
	ck.expect(meet == 1, "S_N and U_N intersect nontrivially");

	// Normality: conjugating U generators by B generators stays in U.
	for (auto const &b : b_gens)
	{
		Table bi = inverse_table(dom, b);
		for (auto const &u : u_gens)
			ck.expect(u_set.count(dom.compose(b, dom.compose(u, bi))) == 1,
			          "U_N is not normal in B_N");
	}
	// Every element of U fixes the base edge.
	int p0 = dom.position(reg.find(TreeVertex::line(f, 0)));
	int p1 = dom.position(reg.find(TreeVertex::line(f, 1)));
	for (auto const &t : U.tables)
		ck.expect(t[std::size_t(p0)] == dom.ids()[std::size_t(p0)] &&
		              t[std::size_t(p1)] == dom.ids()[std::size_t(p1)],
		          "U_N moves the base edge");

	// Normalizer falsification: type-preserving elements outside B must
	// conjugate some generator of U out of U.
	struct Candidate
	{
		std::string name;
		LaurentMatrix g;
	};
	std::vector<Candidate> cands{
	    {"upper t^-1", LaurentMatrix::upper(Series::monomial(f, 1, -1))},
	    {"lower 1", LaurentMatrix::lower(Series::one(f))},
	    {"tau", LaurentMatrix::tau_power(f, 1)},
	};
	nlohmann::json falsified = nlohmann::json::object();
	for (auto const &cand : cands)
	{
		auto gi = cand.g.inverse();
		bool moves_edge = !(act(cand.g, TreeVertex::line(f, 0)) == TreeVertex::line(f, 0)) ||
		                  !(act(cand.g, TreeVertex::line(f, 1)) == TreeVertex::line(f, 1));
		ck.expect(moves_edge, cand.name + " lies in the Iwahori subgroup");
		bool escapes = false;
		for (auto const &u : u_mats)
		{
			Table t = table(cand.g * u * gi);
			bool inside = std::all_of(t.begin(), t.end(), [&](VertexId x) { return dom.contains(x); });
			if (!inside || !u_set.count(t))
			{
				escapes = true;
				break;
			}
		}
		ck.expect(escapes, cand.name + " normalizes U_N");
		falsified[cand.name] = escapes;
	}

	ck.details = {{"q", f->q()},
	              {"p", p},
	              {"depth", depth},
	              {"ball_vertices", dom.size()},
	              {"order_U", U.tables.size()},
	              {"order_S", S.tables.size()},
	              {"order_B", B.tables.size()},
	              {"unique_sylow", ck.passed},
	              {"normalizer_falsified", falsified}};
	return ck;
}

// --- proximality --------------------------------------------------------------

Check proximality_demo(FieldPtr const &f, std::vector<End> const &ends, int n_max,
                       int target_depth)
{
	Check ck("proximality", "tau^n pushes every end except -xi towards the attracting end xi");
	nlohmann::json rows = nlohmann::json::array();
	auto tau = TreeWallElement::tau_power(f, 1);
	TreeVertex v0 = origin(f);
	for (auto const &e : ends)
	{
		if (e.is_xi)
		{
			// tau translates along the line, so the ray towards xi stays on it.
			auto far = TreeVertex(-target_depth, Series(f));
			ck.expect(tau.act(far).x.is_known_zero(), "xi is not fixed by tau");
			rows.push_back({{"end", "xi"}, {"threshold", 0}});
			continue;
		}
		require(!e.x.is_known_zero(), "the repelling end -xi has no finite threshold");
		// A vertex far along the ray towards the end; heights stay above the
		// branch point for every n considered.
		int H = std::max(0, e.x.valuation()) + 2 * n_max + target_depth + 1;
		TreeVertex v(H, e.x);
		int threshold = -1, prev = -1;
		for (int n = 0; n <= n_max; ++n)
		{
			int agree = -std::min(0, meet_height(v0, v));
			if (n > 0 && prev > 0)
				ck.expect(agree == prev + 2, "agreement depth does not grow by 2 per step");
			if (threshold < 0 && agree >= target_depth)
				threshold = n;
			prev = agree;
			v = tau.act(v);
		}
		int expected = std::max(0, (target_depth + e.x.valuation() + 1) / 2);
		if (target_depth + e.x.valuation() <= 0)
			expected = 0;
		ck.expect(threshold == expected || (threshold < 0 && expected > n_max),
		          "threshold for " + e.x.str() + " is " + std::to_string(threshold) +
		              ", expected " + std::to_string(expected));
		rows.push_back({{"end", e.x.str()}, {"valuation", e.x.valuation()}, {"threshold", threshold}});
	}
	ck.details = {{"n_max", n_max}, {"target_depth", target_depth}, {"ends", rows}};
	return ck;
}

} // namespace kmtk
