#include "fkrfe/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace fkrfe {

namespace {

// One record, honoring quoted fields, escaped quotes, and CRLF. Returns
// false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            fields.push_back(std::move(field));
            return true;
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(static_cast<char>(c));
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

bool parse_double(const std::string& text, double& out) {
    std::string t = text;
    // trim surrounding whitespace
    const auto first = t.find_first_not_of(" \t");
    if (first == std::string::npos) return false;
    const auto last = t.find_last_not_of(" \t");
    t = t.substr(first, last - first + 1);
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

Dataset parse_csv_stream(std::istream& in, const ResponseSelector& response,
                         bool categorical) {
    std::vector<std::string> header;
    if (!read_record(in, header) || header.empty() ||
        (header.size() == 1 && header[0].empty()))
        throw EmptyFile("input CSV is empty");

    for (std::size_t i = 0; i < header.size(); ++i)
        for (std::size_t k = i + 1; k < header.size(); ++k)
            if (header[i] == header[k]) throw DuplicateHeader(header[i]);

    // response column: header name first, then 0-based index
    std::size_t y_col = header.size();
    auto it = std::find(header.begin(), header.end(), response.selector);
    if (it != header.end()) {
        y_col = static_cast<std::size_t>(it - header.begin());
    } else {
        std::size_t idx;
        auto [ptr, ec] = std::from_chars(
            response.selector.data(),
            response.selector.data() + response.selector.size(), idx);
        if (ec == std::errc() &&
            ptr == response.selector.data() + response.selector.size() &&
            idx < header.size()) {
            y_col = idx;
        }
    }
    if (y_col >= header.size())
        throw CsvError("response column \"" + response.selector +
                       "\" not found in header");

    Dataset dataset;
    dataset.p = header.size() - 1;
    if (dataset.p == 0) throw CsvError("no predictor columns besides the response");
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != y_col) dataset.feature_names.push_back(header[j]);

    std::vector<double> y_values;
    std::vector<int> y_labels;
    std::map<std::string, int> level_of;

    std::vector<std::string> fields;
    std::size_t row_1based = 1;  // header was row 1
    while (read_record(in, fields)) {
        ++row_1based;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != header.size())
            throw CsvError("row " + std::to_string(row_1based) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(header.size()));
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == y_col) {
                if (categorical) {
                    auto [lvl, inserted] = level_of.try_emplace(
                        fields[j], static_cast<int>(level_of.size()));
                    y_labels.push_back(lvl->second);
                } else {
                    double v;
                    if (!parse_double(fields[j], v))
                        throw NonNumericCell(row_1based, j + 1, fields[j]);
                    y_values.push_back(v);
                }
            } else {
                double v;
                if (!parse_double(fields[j], v))
                    throw NonNumericCell(row_1based, j + 1, fields[j]);
                dataset.x.push_back(v);
            }
        }
    }

    dataset.n = categorical ? y_labels.size() : y_values.size();
    dataset.y = categorical
                    ? Response::categorical(std::move(y_labels),
                                            static_cast<int>(level_of.size()))
                    : Response::continuous(std::move(y_values));
    validate(dataset);
    return dataset;
}

Dataset parse_csv(const std::string& path, const ResponseSelector& response,
                  bool categorical) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open input file: " + path);
    return parse_csv_stream(in, response, categorical);
}

}  // namespace fkrfe
