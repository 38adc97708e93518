#include "crn/harness/pmf_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "crn/errors.hpp"
#include "crn/harness/csv.hpp"

namespace crn::harness {

namespace {

void write_rows(CsvWriter& csv, const crn::SubsetIndexer& idx, const Eigen::VectorXd& values) {
    csv.header({"index", "bitmask", "value"});
    for (int i = 0; i < values.size(); ++i)
        csv.row_text({std::to_string(i), std::to_string(idx.mask(i)), fmt_double(values(i))});
}

} // namespace

void write_joint_csv(const std::string& path, const crn::SubsetIndexer& idx,
                     const crn::JointPmf& p) {
    CsvWriter csv;
    csv.meta("kind", "joint");
    csv.meta("s", static_cast<long long>(p.s));
    csv.meta("k", static_cast<long long>(p.k));
    write_rows(csv, idx, p.values);
    csv.write(path);
}

void write_marginals_csv(const std::string& path, const crn::SubsetIndexer& idx,
                         const crn::MarginalSet& q) {
    CsvWriter csv;
    csv.meta("kind", "marginals");
    csv.meta("s", static_cast<long long>(q.s));
    csv.meta("k", static_cast<long long>(q.k));
    csv.meta("m", static_cast<long long>(q.m));
    write_rows(csv, idx, q.values);
    csv.write(path);
}

PmfDocument read_pmf_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("pmf: cannot open " + path);

    std::map<std::string, std::string> meta;
    std::vector<double> values;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("pmf: malformed metadata line in " + path);
            std::string key = line.substr(1, eq - 1);
            std::string value = line.substr(eq + 1);
            const auto trim = [](std::string& s) {
                while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                    s.erase(s.begin());
                while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
                    s.pop_back();
            };
            trim(key);
            trim(value);
            meta[key] = value;
            continue;
        }
        if (!header_seen) {
            header_seen = true; // column names
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        double value = 0.0;
        while (std::getline(ss, cell, ',')) {
            if (col == 2)
                value = std::stod(cell);
            ++col;
        }
        if (col != 3)
            throw ConfigError("pmf: expected rows of (index, bitmask, value) in " + path);
        values.push_back(value);
    }

    const auto need = [&](const char* key) {
        const auto it = meta.find(key);
        if (it == meta.end())
            throw ConfigError(std::string("pmf: missing '") + key + "' metadata in " + path);
        return it->second;
    };
    const std::string kind = need("kind");
    const int s = std::stoi(need("s"));
    const int k = std::stoi(need("k"));
    if (s != 0 && s != 1)
        throw ConfigError("pmf: s must be 0 or 1 in " + path);
    const crn::SubsetIndexer idx(k);

    if (kind == "joint") {
        if (static_cast<int>(values.size()) != idx.size())
            throw ConfigError("pmf: joint vector must have 2^k rows in " + path);
        crn::JointPmf p;
        p.s = s;
        p.k = k;
        p.values = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<long>(values.size()));
        return p;
    }
    if (kind == "marginals") {
        const int m = std::stoi(need("m"));
        if (m < 0 || m > k || static_cast<int>(values.size()) != idx.prefix_size(m))
            throw ConfigError("pmf: marginal stack size mismatch in " + path);
        crn::MarginalSet q;
        q.s = s;
        q.m = m;
        q.k = k;
        q.values = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<long>(values.size()));
        return q;
    }
    throw ConfigError("pmf: unknown kind '" + kind + "' in " + path);
}

} // namespace crn::harness
