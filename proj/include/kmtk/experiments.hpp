#pragma once

#include "kmtk/report.hpp"
#include "kmtk/rootdata.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmtk {

/// Parameters of one batch command. Unset optionals take the command's
/// default; `validate` checks everything before any computation starts.
struct ExperimentConfig
{
	std::string command = "all";
	int r = 5;
	int q = 2;
	std::vector<int> qs; // per-type thickness parameters, building only
	std::optional<std::string> gcm_file;
	std::optional<int> depth;
	int n_max = 8;
	int window = 24;
	std::uint64_t seed = 1;
	bool svg = false;

	static std::vector<std::string> const &commands();

	/// Keys absent from `j` keep their current value; unknown keys are
	/// rejected.
	void merge_json(nlohmann::json const &j);
	nlohmann::json to_json() const;
	void validate() const;

	int depth_or_default() const;
	std::optional<Gcm> gcm() const;
};

Report cmd_growth(ExperimentConfig const &cfg);
Report cmd_gcm(ExperimentConfig const &cfg);
Report cmd_building(ExperimentConfig const &cfg);
Report cmd_treewall(ExperimentConfig const &cfg);
Report cmd_chabauty(ExperimentConfig const &cfg);
/// Every command above with its default depth.
Report cmd_all(ExperimentConfig const &cfg);

/// Validates and dispatches on cfg.command.
Report run_experiment(ExperimentConfig const &cfg);

} // namespace kmtk
