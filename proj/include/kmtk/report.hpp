#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kmtk {

inline constexpr char const *kVersion = "0.1.0";

/// Outcome of one audited property: a name, a descriptive anchor naming the
/// statement it exercises, a case count and the first few failures.
struct Check
{
	std::string name;
	std::string anchor;
	bool passed = true;
	std::uint64_t cases = 0;
	std::vector<std::string> failures;
	nlohmann::json details = nlohmann::json::object();

	Check() = default;
	Check(std::string n, std::string a) : name(std::move(n)), anchor(std::move(a)) {}

	bool expect(bool ok, std::string const &what)
	{
		++cases;
		if (!ok)
			fail(what);
		return ok;
	}
	void fail(std::string const &what)
	{
		passed = false;
		if (failures.size() < 20)
			failures.push_back(what);
	}
	/// Fold another check's verdict and failures into this one.
	void absorb(Check const &o);

	nlohmann::json to_json() const;
};

/// A command's full output: config, checks, tables and an optional SVG.
struct Report
{
	std::string command;
	nlohmann::json config = nlohmann::json::object();
	std::vector<Check> checks;
	nlohmann::json results = nlohmann::json::object();
	std::vector<std::vector<std::string>> csv; // first row is the header
	std::string svg;

	bool passed() const;
	nlohmann::json to_json() const;
	std::string to_csv() const;
	/// Merge a sub-report (used by "all").
	void append(Report const &sub);
};

} // namespace kmtk
