#include "kmtk/kmtk.h"

#include "kmtk/error.hpp"
#include "kmtk/experiments.hpp"
#include "kmtk/rootdata.hpp"
#include "kmtk/weyl.hpp"

#include <cstring>
#include <memory>
#include <new>
#include <string>

struct kmtk_gcm
{
	kmtk::Gcm gcm;
};

struct kmtk_report
{
	kmtk::Report report;
	std::string json, csv;
};

namespace {

thread_local std::string last_error;

kmtk_status fail(kmtk_status s, std::string msg)
{
	last_error = std::move(msg);
	return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
kmtk_status guarded(F &&body)
{
	try
	{
		body();
		last_error.clear();
		return KMTK_OK;
	}
	catch (kmtk::PreconditionError const &e)
	{
		return fail(KMTK_ERR_PRECONDITION, e.what());
	}
	catch (kmtk::ResourceError const &e)
	{
		return fail(KMTK_ERR_RESOURCE, std::string(e.what()) + " (reached " +
		                                   std::to_string(e.reached()) + ")");
	}
	catch (kmtk::PrecisionError const &e)
	{
		return fail(KMTK_ERR_PRECISION, e.what());
	}
	catch (kmtk::ModelError const &e)
	{
		return fail(KMTK_ERR_MODEL, e.what());
	}
	catch (nlohmann::json::exception const &e)
	{
		return fail(KMTK_ERR_INVALID_ARGUMENT, e.what());
	}
	catch (std::bad_alloc const &)
	{
		return fail(KMTK_ERR_RESOURCE, "out of memory");
	}
	catch (std::exception const &e)
	{
		return fail(KMTK_ERR_INTERNAL, e.what());
	}
}

#define KMTK_NONNULL(p)                                                                        \
	do                                                                                         \
	{                                                                                          \
		if (!(p))                                                                              \
			return fail(KMTK_ERR_INVALID_ARGUMENT, #p " is null");                             \
	} while (0)

} // namespace

extern "C" {

char const *kmtk_version(void)
{
	return kmtk::kVersion;
}

char const *kmtk_status_string(kmtk_status status)
{
	switch (status)
	{
	case KMTK_OK:
		return "ok";
	case KMTK_ERR_INVALID_ARGUMENT:
		return "invalid argument";
	case KMTK_ERR_PRECONDITION:
		return "precondition violated";
	case KMTK_ERR_RESOURCE:
		return "resource limit reached";
	case KMTK_ERR_PRECISION:
		return "insufficient precision";
	case KMTK_ERR_MODEL:
		return "internal model inconsistency";
	case KMTK_ERR_INTERNAL:
		return "internal error";
	}
	return "unknown status";
}

char const *kmtk_last_error(void)
{
	return last_error.c_str();
}

kmtk_status kmtk_gcm_create(int n, int const *entries, kmtk_gcm **out)
{
	KMTK_NONNULL(entries);
	KMTK_NONNULL(out);
	if (n <= 0)
		return fail(KMTK_ERR_INVALID_ARGUMENT, "rank must be positive");
	return guarded([&] {
		std::vector<int> v(entries, entries + std::size_t(n) * std::size_t(n));
		*out = new kmtk_gcm{kmtk::Gcm(n, std::move(v))};
	});
}

kmtk_status kmtk_gcm_from_json(char const *json, kmtk_gcm **out)
{
	KMTK_NONNULL(json);
	KMTK_NONNULL(out);
	return guarded([&] { *out = new kmtk_gcm{kmtk::Gcm::from_json(nlohmann::json::parse(json))}; });
}

kmtk_status kmtk_gcm_right_angled(int r, int c, kmtk_gcm **out)
{
	KMTK_NONNULL(out);
	return guarded([&] { *out = new kmtk_gcm{kmtk::right_angled_fuchsian_gcm(r, c)}; });
}

void kmtk_gcm_destroy(kmtk_gcm *gcm)
{
	delete gcm;
}

kmtk_status kmtk_gcm_rank(kmtk_gcm const *gcm, int *out)
{
	KMTK_NONNULL(gcm);
	KMTK_NONNULL(out);
	*out = gcm->gcm.rank();
	return KMTK_OK;
}

kmtk_status kmtk_gcm_coxeter_matrix(kmtk_gcm const *gcm, int *out, size_t capacity)
{
	KMTK_NONNULL(gcm);
	KMTK_NONNULL(out);
	int n = gcm->gcm.rank();
	if (capacity < std::size_t(n) * std::size_t(n))
		return fail(KMTK_ERR_INVALID_ARGUMENT, "output buffer too small");
	return guarded([&] {
		auto m = kmtk::coxeter_matrix_of(gcm->gcm);
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				out[i * n + j] = m(i, j).value();
	});
}

kmtk_status kmtk_gcm_fuchsian_admissible(kmtk_gcm const *gcm, int r, int *admissible)
{
	KMTK_NONNULL(gcm);
	KMTK_NONNULL(admissible);
	return guarded([&] {
		auto v = kmtk::fuchsian_admissible(gcm->gcm, r);
		*admissible = v.admissible ? 1 : 0;
	});
}

kmtk_status kmtk_coxeter_exponent(int a, int b, int *out)
{
	KMTK_NONNULL(out);
	return guarded([&] { *out = kmtk::coxeter_exponent(a, b).value(); });
}

kmtk_status kmtk_growth_coefficients(int r, int N, uint64_t *out)
{
	KMTK_NONNULL(out);
	return guarded([&] {
		kmtk::require(r >= 5, "polygon size r must be >= 5");
		kmtk::require(N >= 0, "degree must be >= 0");
		auto gs = kmtk::growth_coefficients(kmtk::right_angled_fuchsian_gcm(r), N);
		for (int n = 0; n <= N; ++n)
			out[n] = gs.coefficients[std::size_t(n)];
	});
}

kmtk_status kmtk_lattice_criterion(int r, int q, int *lattice, char *value, size_t capacity)
{
	KMTK_NONNULL(lattice);
	return guarded([&] {
		auto v = kmtk::lattice_criterion(r, q);
		*lattice = v.lattice ? 1 : 0;
		if (value && capacity > 0)
		{
			std::string s = v.value ? v.value->str() : "";
			kmtk::require(s.size() < capacity, "value buffer too small");
			std::memcpy(value, s.c_str(), s.size() + 1);
		}
	});
}

kmtk_status kmtk_run(char const *command, char const *config_json, kmtk_report **out)
{
	KMTK_NONNULL(command);
	KMTK_NONNULL(out);
	return guarded([&] {
		kmtk::ExperimentConfig cfg;
		if (config_json)
			cfg.merge_json(nlohmann::json::parse(config_json));
		cfg.command = command;
		auto rep = std::make_unique<kmtk_report>();
		rep->report = kmtk::run_experiment(cfg);
		rep->json = rep->report.to_json().dump(2);
		rep->csv = rep->report.to_csv();
		*out = rep.release();
	});
}

kmtk_status kmtk_report_json(kmtk_report const *report, char const **out)
{
	KMTK_NONNULL(report);
	KMTK_NONNULL(out);
	*out = report->json.c_str();
	return KMTK_OK;
}

kmtk_status kmtk_report_csv(kmtk_report const *report, char const **out)
{
	KMTK_NONNULL(report);
	KMTK_NONNULL(out);
	*out = report->csv.c_str();
	return KMTK_OK;
}

kmtk_status kmtk_report_svg(kmtk_report const *report, char const **out)
{
	KMTK_NONNULL(report);
	KMTK_NONNULL(out);
	*out = report->report.svg.c_str();
	return KMTK_OK;
}

kmtk_status kmtk_report_passed(kmtk_report const *report, int *out)
{
	KMTK_NONNULL(report);
	KMTK_NONNULL(out);
	*out = report->report.passed() ? 1 : 0;
	return KMTK_OK;
}

void kmtk_report_destroy(kmtk_report *report)
{
	delete report;
}

} // extern "C"
