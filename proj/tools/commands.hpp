#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treeline/run_record.hpp"
#include "treeline/special_series.hpp"

namespace treeline::cli {

/// Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct CommonOptions {
    OutputFormat format = OutputFormat::json;
    SeriesConfig series{};
};

struct SeriesOptions {
    double p = 0.0;
    std::optional<double> x;
    std::optional<double> z;
    std::optional<int> l;
    std::string fn = "h";  ///< phi | H | Hcont | h
    bool check_series = false;
};

struct TableOptions {
    double p = 0.0;
    int n = 10;
};

struct BoundOptions {
    std::optional<std::string> d;  ///< "4" or "3..20"
    std::optional<double> p;
    bool x0 = false;
    double root_tol = 1e-9;
    double p_tol = 1e-6;
};

struct VerifyOptions {
    std::string which;           ///< theorem-a | theorem-b | functional-eq | limit-identity
    std::string d = "3..20";
    double eps = 1e-3;
    double p = 0.25;
    double z = 0.4;
    int N = 200;
    std::optional<double> tol;
};

struct SimulateOptions {
    std::string graph = "strip";
    int d = 4;
    int n = 1;
    int k = 100;
    double p = 0.0;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    bool exact_check = false;
    bool offspring = false;
    std::vector<double> sweep_p;
    std::vector<int> sweep_k;
    std::vector<int> sweep_n;
};

int run_series(const SeriesOptions& o, const CommonOptions& c, std::ostream& out);
int run_table(const TableOptions& o, const CommonOptions& c, std::ostream& out);
int run_bound(const BoundOptions& o, const CommonOptions& c, std::ostream& out);
int run_verify(const VerifyOptions& o, const CommonOptions& c, std::ostream& out);
int run_simulate(const SimulateOptions& o, const CommonOptions& c, std::ostream& out);
int run_compare(const SimulateOptions& o, const CommonOptions& c, std::ostream& out);

/// "4" -> {4, 4}; "3..20" -> {3, 20}
std::pair<int, int> parse_int_range(const std::string& s);

std::string version_string();

}  // namespace treeline::cli
