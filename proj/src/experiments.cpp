#include "kmtk/experiments.hpp"

#include "kmtk/apartment.hpp"
#include "kmtk/building.hpp"
#include "kmtk/chabauty.hpp"
#include "kmtk/error.hpp"
#include "kmtk/field.hpp"
#include "kmtk/random.hpp"
#include "kmtk/treewall.hpp"
#include "kmtk/weyl.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace kmtk {

// --- configuration -------------------------------------------------------------

std::vector<std::string> const &ExperimentConfig::commands()
{
	static std::vector<std::string> const names{"growth", "gcm", "building",
	                                            "treewall", "chabauty", "all"};
	return names;
}

void ExperimentConfig::merge_json(nlohmann::json const &j)
{
	require(j.is_object(), "config must be a JSON object");
	static std::set<std::string> const known{"command", "r",     "q",    "qs",   "gcm_file",
	                                         "depth",   "n_max", "window", "seed", "svg"};
	for (auto const &[key, value] : j.items())
		require(known.count(key), "unknown config key '" + key + "'");
	try
	{
		if (j.contains("command"))
			command = j.at("command").get<std::string>();
		if (j.contains("r"))
			r = j.at("r").get<int>();
		if (j.contains("q"))
			q = j.at("q").get<int>();
		if (j.contains("qs"))
			qs = j.at("qs").get<std::vector<int>>();
		if (j.contains("gcm_file"))
			gcm_file = j.at("gcm_file").get<std::string>();
		if (j.contains("depth"))
			depth = j.at("depth").get<int>();
		if (j.contains("n_max"))
			n_max = j.at("n_max").get<int>();
		if (j.contains("window"))
			window = j.at("window").get<int>();
		if (j.contains("seed"))
			seed = j.at("seed").get<std::uint64_t>();
		if (j.contains("svg"))
			svg = j.at("svg").get<bool>();
	}
	catch (nlohmann::json::exception const &e)
	{
		throw PreconditionError(std::string("bad config value: ") + e.what());
	}
}

nlohmann::json ExperimentConfig::to_json() const
{
	nlohmann::json j = {{"command", command}, {"r", r},           {"q", q},
	                    {"n_max", n_max},     {"window", window}, {"seed", seed},
	                    {"svg", svg}};
	if (!qs.empty())
		j["qs"] = qs;
	if (gcm_file)
		j["gcm_file"] = *gcm_file;
	j["depth"] = depth ? nlohmann::json(*depth) : nlohmann::json(nullptr);
	return j;
}

int ExperimentConfig::depth_or_default() const
{
	if (depth)
		return *depth;
	if (command == "growth" || command == "treewall" || command == "gcm")
		return 8;
	return 3; // building ball radius, chabauty level
}

std::optional<Gcm> ExperimentConfig::gcm() const
{
	if (!gcm_file)
		return std::nullopt;
	return Gcm::load(*gcm_file);
}

void ExperimentConfig::validate() const
{
	auto const &cs = commands();
	require(std::find(cs.begin(), cs.end(), command) != cs.end(),
	        "unknown command '" + command + "'");
	int d = depth_or_default();
	require(d >= 0, "depth must be >= 0");
	auto need_r = [&] { require(r >= 5, "polygon size r must be >= 5"); };
	auto need_field = [&] { (void)FiniteField::make(q); };

	if (command == "growth")
	{
		need_r();
		require(q >= 2, "q must be >= 2");
		require(d <= 40, "growth depth must be <= 40");
	}
	else if (command == "gcm")
	{
		if (gcm_file)
			(void)gcm();
		else
			need_r();
		require(d >= 1 && d <= 12, "prenilpotency search depth must be in 1..12");
	}
	else if (command == "building")
	{
		need_r();
		FuchsianParams p = qs.empty() ? FuchsianParams::uniform(r, q) : FuchsianParams{r, qs, 0};
		p.validate();
		require(d <= 8, "building depth must be <= 8");
	}
	else if (command == "treewall")
	{
		need_field();
		require(d >= 2 && d <= 10, "tree-wall depth must be in 2..10");
	}
	else if (command == "chabauty")
	{
		need_field();
		require(d >= 1 && d <= 6, "observation level N must be in 1..6");
		require(n_max >= 0, "n_max must be >= 0");
		if (window < 2 * n_max + d)
			throw PrecisionError("precision window " + std::to_string(window) +
			                     " < 2*n_max + N = " + std::to_string(2 * n_max + d));
	}
	else // all
	{
		need_r();
		need_field();
		if (window < 2 * n_max + 3)
			throw PrecisionError("precision window too small for n_max");
	}
}

// --- commands ------------------------------------------------------------------

namespace {

std::string big(BigInt const &v)
{
	return v.str();
}

Report start(ExperimentConfig const &cfg, std::string name)
{
	Report rep;
	rep.command = std::move(name);
	ExperimentConfig c = cfg;
	c.command = rep.command;
	rep.config = c.to_json();
	rep.config["depth"] = c.depth_or_default();
	return rep;
}

} // namespace

Report cmd_growth(ExperimentConfig const &cfg)
{
	Report rep = start(cfg, "growth");
	int N = cfg.depth_or_default();
	Gcm gcm = right_angled_fuchsian_gcm(cfg.r);

	Check agree("growth_agreement", "BFS growth equals (1+t)^2 / (1-(r-2)t+t^2)");
	rep.csv.push_back({"n", "bfs", "closed_form", "equal"});
	try
	{
		auto gs = growth_coefficients(gcm, N);
		auto cf = fuchsian_closed_form(cfg.r).expand(N);
		nlohmann::json coeffs = nlohmann::json::array();
		for (int n = 0; n <= N; ++n)
		{
			bool eq = BigInt(gs.coefficients[std::size_t(n)]) == cf[std::size_t(n)];
			agree.expect(eq, "degree " + std::to_string(n));
			rep.csv.push_back({std::to_string(n), std::to_string(gs.coefficients[std::size_t(n)]),
			                   big(cf[std::size_t(n)]), eq ? "true" : "false"});
			coeffs.push_back(gs.coefficients[std::size_t(n)]);
		}
		rep.results["coefficients"] = coeffs;
	}
	catch (ResourceError const &e)
	{
		agree.fail(std::string(e.what()) + " after degree " + std::to_string(e.reached()));
		rep.results["reached_degree"] = e.reached();
	}
	rep.checks.push_back(agree);

	Check lat("lattice_criterion", "W(1/q) finite iff q >= r-2");
	auto v = lattice_criterion(cfg.r, cfg.q);
	lat.expect(v.lattice == (cfg.q >= cfg.r - 2), "verdict disagrees with q >= r-2");
	rep.results["verdict"] = v.lattice ? "Lattice" : "NotLattice";
	rep.results["W_inverse_q"] = v.value ? nlohmann::json(v.value->str()) : nlohmann::json(nullptr);
	// Partial sums increase and, for a lattice, stay below the limit.
	Rational prev = -1;
	for (int n = 0; n <= N; ++n)
	{
		Rational s = growth_partial_sum(cfg.r, cfg.q, n);
		lat.expect(s > prev, "partial sums not increasing at degree " + std::to_string(n));
		if (v.value)
			lat.expect(s <= *v.value, "partial sum exceeds W(1/q) at degree " + std::to_string(n));
		prev = s;
	}
	rep.results["partial_sum"] = prev.str();
	rep.checks.push_back(lat);
	return rep;
}

Report cmd_gcm(ExperimentConfig const &cfg)
{
	Report rep = start(cfg, "gcm");
	int depth = cfg.depth_or_default();
	auto loaded = cfg.gcm();
	Gcm gcm = loaded ? *loaded : right_angled_fuchsian_gcm(cfg.r);
	int r = gcm.rank();
	rep.results["gcm"] = gcm.to_json();

	// Coxeter rule against the order of s_i s_j on every pair of the GCM
	// and on a grid of rank-2 matrices.
	Check cox("coxeter_rule", "Coxeter exponent from the product of Cartan entries");
	auto agree = [&](Gcm const &g, int i, int j) {
		Order rule = coxeter_exponent(g(i, j), g(j, i));
		Order seen = order_of_product(g, i, j, 1000);
		cox.expect(rule == seen, "pair (" + std::to_string(g(i, j)) + ", " +
		                             std::to_string(g(j, i)) + "): rule " + rule.str() +
		                             ", order " + seen.str());
	};
	for (int i = 0; i < r; ++i)
		for (int j = i + 1; j < r; ++j)
			agree(gcm, i, j);
	std::vector<std::pair<int, int>> pairs{{0, 0}, {-1, -1}, {-1, -2}, {-2, -1}, {-1, -3}, {-3, -1}};
	std::mt19937_64 rng(cfg.seed);
	for (int k = 0; k < 10;)
	{
		int a = -uniform_int(rng, 1, 6), b = -uniform_int(rng, 1, 6);
		if (a * b < 4)
			continue;
		pairs.push_back({a, b});
		++k;
	}
	for (auto [a, b] : pairs)
		agree(Gcm(2, {2, a, b, 2}), 0, 1);
	rep.checks.push_back(cox);

	auto adm = fuchsian_admissible(gcm, r);
	rep.results["admissible"] = adm.admissible;
	rep.results["reason"] = adm.reason;
	if (adm.offending)
		rep.results["offending_pair"] = {adm.offending->first, adm.offending->second};
	nlohmann::json radical = nlohmann::json::array();
	for (int i = 0; i < r; ++i)
		radical.push_back(abelian_radical_condition(gcm, i));
	rep.results["abelian_radical_condition"] = radical;

	Check wmat("weyl_group", "admissible GCMs have the right-angled r-gon Weyl group");
	wmat.expect(!adm.admissible ||
	                coxeter_matrix_of(gcm) == CoxeterMatrix::right_angled_polygon(r),
	            "Coxeter matrix of an admissible GCM is not right-angled");
	rep.checks.push_back(wmat);

	if (adm.admissible && gcm.is_symmetric())
	{
		Check pre("prenilpotency", "certified (non-)prenilpotent root pairs");
		auto a0 = -RootVector::simple(r, 0);
		auto a2 = -RootVector::simple(r, 2);
		auto s0a2 = apply(simple_reflection(gcm, 0), a2);
		nlohmann::json out = nlohmann::json::array();
		for (auto const &[name, b] : {std::pair{"{-a0, -a2}", a2}, std::pair{"{-a0, s0(-a2)}", s0a2}})
		{
			auto res = prenilpotent_pair(gcm, a0, b, depth);
			pre.expect(res.verdict != Prenilpotency::Unknown, std::string(name) + " undecided");
			pre.expect(verify(gcm, a0, b, res), std::string(name) + " certificate fails");
			nlohmann::json e = {{"pair", name},
			                    {"verdict", to_string(res.verdict)},
			                    {"depth", res.depth},
			                    {"form_value", bilinear_form(gcm, a0, b)}};
			if (res.positive_witness)
				e["positive_witness"] = res.positive_witness->word;
			if (res.negative_witness)
				e["negative_witness"] = res.negative_witness->word;
			out.push_back(e);
		}
		rep.results["prenilpotency"] = out;
		rep.checks.push_back(pre);
	}
	return rep;
}

Report cmd_building(ExperimentConfig const &cfg)
{
	Report rep = start(cfg, "building");
	int N = cfg.depth_or_default();
	FuchsianParams params =
	    cfg.qs.empty() ? FuchsianParams::uniform(cfg.r, cfg.q) : FuchsianParams{cfg.r, cfg.qs, 0};
	Building b(params);
	int r = b.rank();
	auto ball = b.ball(N);

	Check counts("ball_counts", "chambers at gallery distance n from the graph product");
	rep.csv.push_back({"n", "chambers", "cumulative", "expected_cumulative"});
	std::uint64_t total = 0;
	nlohmann::json sizes = nlohmann::json::array();
	for (int n = 0; n <= N; ++n)
	{
		total += ball[std::size_t(n)].size();
		auto expected = b.expected_ball_size(n);
		counts.expect(total == expected, "ball of radius " + std::to_string(n) + " has " +
		                                     std::to_string(total) + " chambers, expected " +
		                                     std::to_string(expected));
		rep.csv.push_back({std::to_string(n), std::to_string(ball[std::size_t(n)].size()),
		                   std::to_string(total), std::to_string(expected)});
		sizes.push_back(total);
		for (auto const &c : ball[std::size_t(n)])
			counts.expect(b.w_distance(b.base(), c).length() == n,
			              "W-distance length differs from gallery distance at " + c.str());
	}
	rep.results["ball_sizes"] = sizes;
	rep.checks.push_back(counts);

	Check panels("panels", "every panel of type i has 1+q_i chambers");
	for (auto const &level : ball)
		for (auto const &c : level)
			for (int i = 0; i < r; ++i)
			{
				auto p = b.panel_chambers(c, i);
				std::set<Chamber> distinct(p.begin(), p.end());
				panels.expect(distinct.size() == std::size_t(b.thickness(i) + 1) &&
				                  distinct.count(c),
				              "panel of type " + std::to_string(i) + " at " + c.str());
			}
	rep.checks.push_back(panels);

	Check links("links", "vertex links are complete bipartite K_{1+q_i, 1+q_{i+1}}");
	std::mt19937_64 rng(cfg.seed);
	std::vector<Chamber> all;
	for (auto const &level : ball)
		all.insert(all.end(), level.begin(), level.end());
	nlohmann::json link_types = nlohmann::json::array();
	for (int k = 0; k < 20; ++k)
	{
		VertexResidue v{all[uniform_below(rng, all.size())], int(uniform_below(rng, std::size_t(r)))};
		auto g = b.link(v);
		// q_{i+1}+1 panels of type i against q_i+1 panels of type i+1.
		int qi = b.thickness(v.type), qj = b.thickness((v.type + 1) % r);
		links.expect(g.complete_bipartite() && g.left == qj + 1 && g.right == qi + 1,
		             "link at " + v.base.str() + " of type " + std::to_string(v.type) + " is not K_{" +
		                 std::to_string(qj + 1) + "," + std::to_string(qi + 1) + "}");
		link_types.push_back({v.type, g.left, g.right});
	}
	rep.results["sampled_links"] = link_types;
	rep.checks.push_back(links);

	Check pres("presentation", "graph product relations");
	auto pr = b.verify_presentation(1000, cfg.seed);
	pres.cases = std::uint64_t(pr.samples) + 3;
	if (!pr.passed())
	{
		pres.passed = false;
		for (auto const &f : pr.failures)
			pres.fail(f);
		if (pr.failures.empty())
			pres.fail("presentation check failed");
	}
	pres.details = {{"samples", pr.samples}, {"sample_failures", pr.sample_failures}};
	rep.checks.push_back(pres);

	if (params.constant_thickness())
	{
		auto v = lattice_criterion(r, params.q[0]);
		rep.results["covolume_series"] =
		    v.value ? nlohmann::json(v.value->str()) : nlohmann::json("diverges");
	}

	if (cfg.svg)
	{
		Check svg("svg_tiling", "apartment tiling has one polygon per Weyl element");
		auto tiling = apartment_svg(r, N);
		auto gs = growth_coefficients(right_angled_fuchsian_gcm(r), N);
		std::size_t acc = 0, want = 0;
		for (int n = 0; n <= N; ++n)
		{
			acc += tiling.polygons_per_depth[std::size_t(n)];
			want += gs.coefficients[std::size_t(n)];
			svg.expect(acc == want, "cumulative polygons at depth " + std::to_string(n));
		}
		rep.svg = tiling.svg;
		rep.results["svg_polygons"] = acc;
		rep.checks.push_back(svg);
	}
	return rep;
}

Report cmd_treewall(ExperimentConfig const &cfg)
{
	Report rep = start(cfg, "treewall");
	int depth = cfg.depth_or_default();
	auto f = FiniteField::make(cfg.q);
	int lo = -depth, hi = depth;
	rep.results["field"] = f->describe();

	rep.checks.push_back(fixator_law_check(f, lo, hi, depth));
	{
		Check hb("horoball", "V_n acts trivially on the horoball; U_{a_n} simply transitive "
		                     "on upward edges");
		for (int n = -depth / 2; n <= depth / 2; ++n)
		{
			auto c = horoball_check(f, n, depth, hi);
			hb.absorb(c);
		}
		rep.checks.push_back(hb);
	}
	rep.checks.push_back(intersection_check(f, depth / 2, depth, lo, hi, 200, cfg.seed));
	rep.checks.push_back(abelian_exponent_check(f, lo, hi, 200, cfg.seed));
	rep.checks.push_back(tau_normalization_check(f, lo, hi, depth, 200, cfg.seed));
	rep.checks.push_back(decomposition_check(f, depth, lo, hi, 1000, cfg.seed));
	rep.checks.push_back(sylow_ball_check(f, std::min(depth, cfg.q <= 3 ? 4 : 3)));

	std::vector<End> ends{{true, Series(f)},
	                      {false, Series::one(f)},
	                      {false, Series::monomial(f, 1, -2)},
	                      {false, Series::monomial(f, 1, depth / 2) + Series::monomial(f, 1, depth)}};
	rep.checks.push_back(proximality_demo(f, ends, depth, depth / 2));

	rep.csv.push_back({"check", "cases", "passed"});
	for (auto const &c : rep.checks)
		rep.csv.push_back({c.name, std::to_string(c.cases), c.passed ? "true" : "false"});
	return rep;
}

Report cmd_chabauty(ExperimentConfig const &cfg)
{
	Report rep = start(cfg, "chabauty");
	int N = cfg.depth_or_default();
	auto f = FiniteField::make(cfg.q);

	auto limit = conjugate_stabilizer_limit(f, N, cfg.n_max, cfg.window);
	rep.results["n0"] = limit.details["n0"];
	rep.results["verdict"] = limit.details["verdict"];
	rep.csv.push_back({"n", "orbit", "tables"});
	for (auto const &row : limit.details["per_n"])
		rep.csv.push_back({std::to_string(row["n"].get<int>()),
		                   std::to_string(row["orbit"].get<std::size_t>()),
		                   std::to_string(row["tables"].get<std::size_t>())});
	rep.checks.push_back(limit);

	auto unip = unipotent_contraction(f, N, cfg.n_max, cfg.window);
	rep.results["unipotent_n0"] = unip.details["n0"];
	rep.checks.push_back(unip);

	Check bounded("boundedness", "conjugates of D_xi elements stay bounded");
	std::mt19937_64 rng(cfg.seed);
	std::vector<TreeWallElement> gs{TreeWallElement::identity(f),
	                                TreeWallElement::translation(Series::monomial(f, 1, -1))};
	for (int k = 0; k < 3; ++k)
		gs.push_back(TreeWallElement::general(0, random_unit(f, rng, N),
		                                      random_series(f, rng, -2, N)));
	for (auto const &g : gs)
		bounded.absorb(boundedness_check(g, cfg.n_max, N));
	rep.checks.push_back(bounded);

	rep.checks.push_back(conjugation_exactness_check(f, N, cfg.window));
	return rep;
}

Report cmd_all(ExperimentConfig const &cfg)
{
	Report rep;
	rep.command = "all";
	rep.config = cfg.to_json();
	for (auto const &name : {"growth", "gcm", "building", "treewall", "chabauty"})
	{
		ExperimentConfig sub = cfg;
		sub.command = name;
		sub.depth.reset();
		sub.svg = cfg.svg && sub.command == "building";
		rep.append(run_experiment(sub));
	}
	return rep;
}

Report run_experiment(ExperimentConfig const &cfg)
{
	cfg.validate();
	if (cfg.command == "growth")
		return cmd_growth(cfg);
	if (cfg.command == "gcm")
		return cmd_gcm(cfg);
	if (cfg.command == "building")
		return cmd_building(cfg);
	if (cfg.command == "treewall")
		return cmd_treewall(cfg);
	if (cfg.command == "chabauty")
		return cmd_chabauty(cfg);
	return cmd_all(cfg);
}

} // namespace kmtk
