#include "flora/text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace flora {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string trim(std::string_view s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && is_space(s[begin])) ++begin;
    while (end > begin && is_space(s[end - 1])) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // leading whitespace dropped
    for (char c : s) {
        if (is_space(c)) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            out.push_back(c);
            in_ws = false;
        }
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string name_key(std::string_view s) {
    return to_lower(normalize_whitespace(s));
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

DelimitedReader::DelimitedReader(std::istream& in, char delim, char quote)
    : in_(in), delim_(delim), quote_(quote) {}

bool DelimitedReader::next_row(std::vector<std::string>& fields) {
    fields.clear();
    int first = in_.peek();
    if (first == EOF) return false;

    std::string field;
    bool quoted = false;
    bool any = false;
    int ch;
    while ((ch = in_.get()) != EOF) {
        char c = static_cast<char>(ch);
        any = true;
        if (quoted) {
            if (quote_ != '\0' && c == quote_) {
                if (in_.peek() == quote_) {
                    in_.get();
                    field.push_back(quote_);
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (quote_ != '\0' && c == quote_ && field.empty()) {
            quoted = true;
        } else if (c == delim_) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            break;
        } else {
            field.push_back(c);
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

std::string join_delimited(const std::vector<std::string>& fields, char delim) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(delim);
        const std::string& f = fields[i];
        bool needs_quote = f.find(delim) != std::string::npos ||
                           f.find('"') != std::string::npos ||
                           f.find('\n') != std::string::npos;
        if (needs_quote) {
            out.push_back('"');
            for (char c : f) {
                if (c == '"') out.push_back('"');
                out.push_back(c);
            }
            out.push_back('"');
        } else {
            out += f;
        }
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

std::string format_fixed_banker(double value, int decimals) {
    double scale = std::pow(10.0, decimals);
    double scaled = value * scale;
    double floor_val = std::floor(scaled);
    double frac = scaled - floor_val;
    double rounded;
    if (frac > 0.5) {
        rounded = floor_val + 1.0;
    } else if (frac < 0.5) {
        rounded = floor_val;
    } else {
        // halfway: round to even
        rounded = (std::fmod(floor_val, 2.0) == 0.0) ? floor_val : floor_val + 1.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded / scale);
    return buf;
}

}  // namespace flora
