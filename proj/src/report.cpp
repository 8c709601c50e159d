#include "kmtk/report.hpp"

#include <algorithm>

namespace kmtk {

void Check::absorb(Check const &o)
{
	cases += o.cases;
	if (!o.passed)
		passed = false;
	for (auto const &f : o.failures)
		if (failures.size() < 20)
			failures.push_back(o.name + ": " + f);
}

nlohmann::json Check::to_json() const
{
	return {{"name", name},   {"anchor", anchor},     {"passed", passed},
	        {"cases", cases}, {"failures", failures}, {"details", details}};
}

bool Report::passed() const
{
	return std::all_of(checks.begin(), checks.end(), [](Check const &c) { return c.passed; });
}

nlohmann::json Report::to_json() const
{
	nlohmann::json checks_json = nlohmann::json::array();
	for (auto const &c : checks)
		checks_json.push_back(c.to_json());
	return {{"tool", "kmtk"},       {"version", kVersion},    {"command", command},
	        {"config", config},     {"passed", passed()},     {"checks", checks_json},
	        {"results", results}};
}

std::string Report::to_csv() const
{
	std::string out;
	for (auto const &row : csv)
	{
		for (std::size_t i = 0; i < row.size(); ++i)
		{
			bool quote = row[i].find_first_of(",\"\n") != std::string::npos;
			std::string cell = row[i];
			if (quote)
			{
				std::string esc;
				for (char ch : cell)
					esc += ch == '"' ? std::string("\"\"") : std::string(1, ch);
				cell = "\"" + esc + "\"";
			}
			out += (i ? "," : "") + cell;
		}
		out += "\n";
	}
	return out;
}

void Report::append(Report const &sub)
{
	for (auto c : sub.checks)
	{
		c.name = sub.command + "." + c.name;
		checks.push_back(std::move(c));
	}
	results[sub.command] = sub.results;
	if (!sub.csv.empty())
	{
		if (!csv.empty())
			csv.push_back({});
		csv.push_back({"# " + sub.command});
		csv.insert(csv.end(), sub.csv.begin(), sub.csv.end());
	}
	if (svg.empty())
		svg = sub.svg;
}

} // namespace kmtk
