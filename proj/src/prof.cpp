#include "abcdwavenet/prof.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace abcdwavenet::prof {

namespace {

bool g_enabled = false;

struct Bucket {
    double seconds = 0.0;
    long long calls = 0;
};
std::map<std::string, Bucket>& buckets() {
    static std::map<std::string, Bucket> b;
    return b;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

void enable(bool on) { g_enabled = on; }
bool enabled() { return g_enabled; }

void reset() { buckets().clear(); }

void add(const char* key, double seconds) {
    Bucket& b = buckets()[key];
    b.seconds += seconds;
    b.calls += 1;
}

std::vector<Entry> snapshot() {
    std::vector<Entry> out;
    for (const auto& [key, b] : buckets()) out.push_back({key, b.seconds, b.calls});
    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return a.seconds > b.seconds; });
    return out;
}

ScopedTimer::ScopedTimer(const char* key) : key_(key), start_(0.0), active_(g_enabled) {
    if (active_) start_ = now_seconds();
}

ScopedTimer::~ScopedTimer() {
    if (active_) add(key_, now_seconds() - start_);
}

}  // namespace abcdwavenet::prof
