#include "kicl/util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kicl::util {

// Howard Hinnant's civil-days algorithm.
int days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int>(doe) - 719468;
}

void civil_from_days(int days, int& y, int& m, int& d) {
    days += 719468;
    const int era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += m <= 2;
}

int day_of_week(int days) {
    // 1970-01-01 was a Thursday; map so 0 = Monday.
    int dow = (days + 3) % 7;
    return dow < 0 ? dow + 7 : dow;
}

int parse_day(std::string_view s) {
    if (s.find('-') != std::string_view::npos && s.find('-') > 0) {
        int y = 0, m = 0, d = 0;
        if (std::sscanf(std::string(s).c_str(), "%d-%d-%d", &y, &m, &d) != 3)
            throw ConfigError("bad date: " + std::string(s));
        return days_from_civil(y, m, d);
    }
    return static_cast<int>(parse_long(s, "trading_day"));
}

std::string format_day(int ordinal) {
    int y, m, d;
    civil_from_days(ordinal, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
    return buf;
}

std::int64_t parse_datetime(std::string_view sv) {
    std::string s(sv);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char sep = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &sec);
    if (n < 6 || (sep != ' ' && sep != 'T'))
        throw ConfigError("bad datetime: " + s);
    return static_cast<std::int64_t>(days_from_civil(y, mo, d)) * 86400 + h * 3600 + mi * 60 + sec;
}

std::string format_datetime(std::int64_t t) {
    int day = static_cast<int>(t >= 0 ? t / 86400 : (t - 86399) / 86400);
    int rem = static_cast<int>(t - static_cast<std::int64_t>(day) * 86400);
    int y, m, d;
    civil_from_days(day, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:%02d", y, m, d, rem / 3600,
                  (rem / 60) % 60, rem % 60);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* field) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{})
        throw ConfigError(std::string("bad numeric value for ") + field + ": " + std::string(s));
    return v;
}

long parse_long(std::string_view s, const char* field) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{})
        throw ConfigError(std::string("bad integer value for ") + field + ": " + std::string(s));
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StageError("io", "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StageError("io", "cannot write " + path);
    f << content;
}

std::uint64_t hash_file(const std::string& path) {
    return fnv1a64(read_file(path));
}

}  // namespace kicl::util
