// SPDX-License-Identifier: Apache-2.0

#include "bdris/result.hpp"

#include <ctime>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace bdris {

namespace {

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", tm.tm_year + 1900,
                       tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    out << content;
    if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path));
}

} // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ResultTable::num(double value) { return fmt::format("{}", value); }

std::string ResultTable::num(long long value) { return fmt::format("{}", value); }

void ResultTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) {
        throw std::invalid_argument(fmt::format("row has {} cells, table has {} columns",
                                                cells.size(), columns.size()));
    }
    rows.push_back(std::move(cells));
}

std::string ResultTable::to_tsv() const {
    std::string out = fmt::format("{}\n", fmt::join(columns, "\t"));
    for (const auto& row : rows) {
        out += fmt::format("{}\n", fmt::join(row, "\t"));
    }
    return out;
}

void ResultTable::write_tsv(const std::string& path) const { write_file(path, to_tsv()); }

std::string ResultTable::write_meta(const std::string& table_path, const std::string& experiment,
                                    std::uint64_t seed, const std::string& config_json) const {
    nlohmann::json meta;
    meta["experiment"] = experiment;
    meta["seed"] = seed;
    meta["config"] = nlohmann::json::parse(config_json);
    meta["table_hash"] = fmt::format("fnv1a64:{:016x}", fnv1a64(to_tsv()));
    const std::string content = meta.dump(2) + "\n";
    write_file(table_path + ".meta.json", content);
    return content;
}

void Manifest::write(const std::string& path) const {
    nlohmann::json m;
    m["experiment"] = experiment;
    m["config_path"] = config_path;
    m["output_dir"] = output_dir;
    m["seed"] = seed;
    m["timestamp_utc"] = timestamp_utc();
    m["artifacts"] = nlohmann::json::array();
    for (const auto& a : artifacts) {
        m["artifacts"].push_back({{"path", a.path}, {"hash", a.hash}});
    }
    m["gates_passed"] = gates_passed;
    m["gate_messages"] = gate_messages;
    write_file(path, m.dump(2) + "\n");
}

} // namespace bdris
