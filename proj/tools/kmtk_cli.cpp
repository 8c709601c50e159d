// Batch front-end. Talks to the toolkit only through the C API.
#include "kmtk/kmtk.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct Options
{
	std::optional<int> r, q, depth, n_max, window;
	std::optional<std::uint64_t> seed;
	std::optional<std::string> gcm_file, config, out, svg, csv;
};

std::string read_file(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot read " + path);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

void write_file(std::string const &path, std::string const &text)
{
	std::ofstream out(path);
	if (!out || !(out << text))
		throw std::runtime_error("cannot write " + path);
}

// Config file first, then flags on top.
nlohmann::json build_config(Options const &o)
{
	nlohmann::json cfg = nlohmann::json::object();
	if (o.config)
		cfg = nlohmann::json::parse(read_file(*o.config));
	if (!cfg.is_object())
		throw std::runtime_error("config file must hold a JSON object");
	cfg.erase("command");
	auto set = [&](char const *key, auto const &v) {
		if (v)
			cfg[key] = *v;
	};
	set("r", o.r);
	set("q", o.q);
	set("depth", o.depth);
	set("n_max", o.n_max);
	set("window", o.window);
	set("seed", o.seed);
	set("gcm_file", o.gcm_file);
	if (o.svg)
		cfg["svg"] = true;
	return cfg;
}

int run(std::string const &command, Options const &o)
{
	nlohmann::json cfg;
	try
	{
		cfg = build_config(o);
	}
	catch (std::exception const &e)
	{
		std::cerr << "kmtk: " << e.what() << "\n";
		return 2;
	}
	kmtk_report *rep = nullptr;
	kmtk_status st = kmtk_run(command.c_str(), cfg.dump().c_str(), &rep);
	if (st != KMTK_OK)
	{
		std::cerr << "kmtk: " << kmtk_status_string(st) << ": " << kmtk_last_error() << "\n";
		return 2;
	}
	char const *json = nullptr, *csv = nullptr, *svg = nullptr;
	int passed = 0;
	kmtk_report_json(rep, &json);
	kmtk_report_csv(rep, &csv);
	kmtk_report_svg(rep, &svg);
	kmtk_report_passed(rep, &passed);
	int code = passed ? 0 : 1;
	try
	{
		if (o.out)
			write_file(*o.out, std::string(json) + "\n");
		else
			std::cout << json << "\n";
		if (o.csv)
			write_file(*o.csv, csv);
		if (o.svg)
			write_file(*o.svg, svg);
	}
	catch (std::exception const &e)
	{
		std::cerr << "kmtk: " << e.what() << "\n";
		code = 2;
	}
	kmtk_report_destroy(rep);
	return code;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Kac-Moody / right-angled building toolkit: verification experiments"};
	app.set_version_flag("--version", std::string(kmtk_version()));
	app.require_subcommand(1);

	Options o;
	auto add_common = [&o](CLI::App *sub) {
		sub->add_option("--r", o.r, "polygon size r (>= 5)");
		sub->add_option("--q", o.q, "thickness / field size q");
		sub->add_option("--depth", o.depth, "ball radius, series depth or observation level N");
		sub->add_option("--nmax", o.n_max, "largest conjugation exponent n");
		sub->add_option("--window", o.window, "series precision window");
		sub->add_option("--seed", o.seed, "seed for sampled checks");
		sub->add_option("--gcm-file", o.gcm_file, "GCM as a JSON array of integer rows");
		sub->add_option("--config", o.config, "JSON config file; flags override it");
		sub->add_option("--out", o.out, "write the JSON report here instead of stdout");
		sub->add_option("--csv", o.csv, "write the CSV tables here");
		sub->add_option("--svg", o.svg, "render the apartment tiling to this file");
	};

	std::string chosen;
	for (auto const &[name, help] :
	     {std::pair{"growth", "growth series of the right-angled r-gon group and lattice verdict"},
	      std::pair{"gcm", "admissibility, Coxeter rule and prenilpotency certificates"},
	      std::pair{"building", "ball statistics, panel and link audits, optional SVG"},
	      std::pair{"treewall", "horoball, decomposition, Sylow and proximality checks"},
	      std::pair{"chabauty", "limit of conjugated vertex stabilizers"},
	      std::pair{"all", "every experiment with default parameters"}})
	{
		auto *sub = app.add_subcommand(name, help);
		add_common(sub);
		sub->callback([&chosen, n = std::string(name)] { chosen = n; });
	}

	try
	{
		app.parse(argc, argv);
	}
	catch (CLI::ParseError const &e)
	{
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}
	return run(chosen, o);
}
