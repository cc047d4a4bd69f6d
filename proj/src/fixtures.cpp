#include "arithperm/fixtures.hpp"

#include "fixtures_data.hpp"

#include <sstream>
#include <stdexcept>

namespace arithperm::fixtures {

namespace {

// Data rows of an embedded CSV: comment lines and the header are skipped.
std::vector<std::vector<std::string>> parse_csv(const char* text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (!line.empty() && line.back() == ',')
            fields.emplace_back();
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::optional<std::string> non_empty(const std::vector<std::string>& row, std::size_t i) {
    if (i >= row.size() || row[i].empty())
        return std::nullopt;
    return row[i];
}

} // namespace

const std::vector<Table1Entry>& table1() {
    static const auto entries = [] {
        std::vector<Table1Entry> out;
        for (const auto& r : parse_csv(embedded::kTable1))
            out.push_back({std::stoul(r.at(0)), r.at(1), r.at(2), non_empty(r, 3), non_empty(r, 4)});
        return out;
    }();
    return entries;
}

const std::vector<Table1Erratum>& table1_errata() {
    static const auto entries = [] {
        std::vector<Table1Erratum> out;
        for (const auto& r : parse_csv(embedded::kTable1Errata)) {
            const auto kind = parse_kind(r.at(0));
            if (!kind)
                throw std::logic_error("table1_errata: unknown kind " + r.at(0));
            out.push_back({*kind, std::stoul(r.at(1)), r.at(2), r.at(3), r.at(4)});
        }
        return out;
    }();
    return entries;
}

const std::vector<Table2Entry>& table2() {
    static const auto entries = [] {
        std::vector<Table2Entry> out;
        for (const auto& r : parse_csv(embedded::kTable2))
            out.push_back({std::stoull(r.at(0)), r.at(1), r.at(2), r.at(3), r.at(4)});
        return out;
    }();
    return entries;
}

const std::vector<Table2Erratum>& table2_errata() {
    static const auto entries = [] {
        std::vector<Table2Erratum> out;
        for (const auto& r : parse_csv(embedded::kTable2Errata))
            out.push_back({std::stoull(r.at(0)), r.at(1), r.at(2), r.at(3)});
        return out;
    }();
    return entries;
}

const std::vector<NamedConstant>& constants() {
    static const auto entries = [] {
        std::vector<NamedConstant> out;
        for (const auto& r : parse_csv(embedded::kConstants))
            out.push_back({r.at(0), std::stod(r.at(1)), std::stod(r.at(2))});
        return out;
    }();
    return entries;
}

const NamedConstant& constant(std::string_view name) {
    for (const auto& c : constants())
        if (c.name == name)
            return c;
    throw std::out_of_range("no fixture constant named " + std::string(name));
}

std::optional<Table1Erratum> root_erratum(CompatKind kind, std::size_t n) {
    for (const auto& e : table1_errata())
        if (e.kind == kind && e.n == n)
            return e;
    return std::nullopt;
}

std::optional<Table2Erratum> table2_erratum(std::uint64_t b, std::string_view column) {
    for (const auto& e : table2_errata())
        if (e.b == b && e.column == column)
            return e;
    return std::nullopt;
}

} // namespace arithperm::fixtures
