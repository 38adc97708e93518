#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "crn/geo.hpp"
#include "crn/harness/csv.hpp"
#include "crn/neighborhood.hpp"

namespace crn::harness {

using json = nlohmann::json;

/// Loads and parses a JSON document; wraps failures in ConfigError.
json load_json_file(const std::string& path);

/// Rejects any key of obj outside the allowed list.
void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context);

double get_double(const json& obj, const char* key, double fallback);
long long get_int(const json& obj, const char* key, long long fallback);

/// Uniform alpha grid [start, stop] with the given step, endpoint included.
struct AlphaGrid {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.001;

    [[nodiscard]] std::vector<double> points() const;
    static AlphaGrid from_json(const json& obj, const AlphaGrid& fallback);
    void echo(CsvWriter& csv) const;
};

Point parse_point(const json& value, const std::string& context);
PowerModel parse_power_model(const json& obj, const PowerModel& fallback);
Scene parse_scene(const json& obj, const Scene& fallback);
GridSpec parse_grid(const json& obj, const GridSpec& fallback);

void echo_power_model(CsvWriter& csv, const PowerModel& model);
void echo_scene(CsvWriter& csv, const Scene& scene);
void echo_grid(CsvWriter& csv, const GridSpec& grid);

} // namespace crn::harness
