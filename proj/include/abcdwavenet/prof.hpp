#pragma once

#include <string>
#include <vector>

namespace abcdwavenet::prof {

// Wall-clock accounting per op category, used by the benchmark command.
// Disabled by default; enabling costs one clock read per instrumented op.
void enable(bool on);
bool enabled();
void reset();
void add(const char* key, double seconds);

struct Entry {
    std::string key;
    double seconds = 0.0;
    long long calls = 0;
};
std::vector<Entry> snapshot();

class ScopedTimer {
  public:
    explicit ScopedTimer(const char* key);
    ~ScopedTimer();
    ScopedTimer(const ScopedTimer&) = delete;
    ScopedTimer& operator=(const ScopedTimer&) = delete;

  private:
    const char* key_;
    double start_;
    bool active_;
};

}  // namespace abcdwavenet::prof
