#include "irsbf/instance_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "irsbf/errors.hpp"

namespace irsbf {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line, const char* what) {
    field = trim(field);
    if (field.empty()) {
        throw ParseError(line, std::string("missing ") + what + " part");
    }
    if (field.front() == '+') {
        field.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line, std::string("invalid ") + what + " part '" + std::string(field) + "'");
    }
    return value;
}

} // namespace

ChannelSet read_instance(std::istream& in) {
    std::vector<Complex> values;
    std::string text;
    std::size_t line = 0;
    bool header_allowed = true;
    while (std::getline(in, text)) {
        ++line;
        const std::string_view row = trim(text);
        if (row.empty() || row.front() == '#') {
            continue;
        }
        if (header_allowed && row == "re,im") {
            header_allowed = false;
            continue;
        }
        header_allowed = false;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError(line, "expected 're,im', got '" + std::string(row) + "'");
        }
        const std::string_view re_text = row.substr(0, comma);
        const std::string_view im_text = row.substr(comma + 1);
        if (im_text.find(',') != std::string_view::npos) {
            throw ParseError(line, "too many fields in '" + std::string(row) + "'");
        }
        values.emplace_back(parse_number(re_text, line, "real"), parse_number(im_text, line, "imaginary"));
    }
    if (values.size() < 2) {
        throw ParseError(line, "instance needs h0 and at least one reflected channel");
    }
    const Complex direct = values.front();
    values.erase(values.begin());
    return ChannelSet(direct, std::move(values));
}

ChannelSet read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open '" + path + "'");
    }
    return read_instance(in);
}

std::string format_double(double value) {
    std::array<char, 32> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ec == std::errc() ? ptr : buffer.data());
}

void write_instance(std::ostream& out, const ChannelSet& channels, const std::string& comment) {
    std::string_view rest = comment;
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        out << "# " << rest.substr(0, nl) << '\n';
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    }
    out << format_double(channels.direct().real()) << ',' << format_double(channels.direct().imag()) << '\n';
    for (const Complex& h : channels.reflected()) {
        out << format_double(h.real()) << ',' << format_double(h.imag()) << '\n';
    }
}

} // namespace irsbf
