#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kicl {

// Configuration problems (bad JSON, invalid values). CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pipeline stage failed. CLI maps this to exit code 3.
struct StageError : std::runtime_error {
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error("[" + stage + "] " + what), stage_name(stage) {}
    std::string stage_name;
};

namespace util {

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// ---- civil date <-> day ordinal (days since 1970-01-01) ----

int days_from_civil(int y, int m, int d);
void civil_from_days(int days, int& y, int& m, int& d);
int day_of_week(int days);  // 0 = Monday ... 6 = Sunday

// Accepts "YYYY-MM-DD" or a plain integer ordinal.
int parse_day(std::string_view s);
std::string format_day(int ordinal);

// "YYYY-MM-DD HH:MM[:SS]" or "YYYY-MM-DDTHH:MM[:SS]" -> seconds since epoch,
// interpreted in market-local time.
std::int64_t parse_datetime(std::string_view s);
std::string format_datetime(std::int64_t t);

// ---- csv helpers ----

std::vector<std::string> split_csv_line(const std::string& line);

// Shortest round-trip formatting; replay dumps rely on exact re-parse.
std::string format_double(double v);
double parse_double(std::string_view s, const char* field);
long parse_long(std::string_view s, const char* field);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::uint64_t hash_file(const std::string& path);

}  // namespace util
}  // namespace kicl
