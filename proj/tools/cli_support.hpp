#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "superburst/superburst.h"

namespace sbcli {

// Raised for bad command-line values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure reported by the library; keeps the status for the exit code.
struct LibraryError : std::runtime_error {
  LibraryError(sb_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  sb_status status;
};

void check(sb_status status, std::string_view context);
int exit_code(sb_status status);

// "start:stop:steps[:lin|:log]"
struct SweepSpec {
  enum class Scale { linear, log };
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;
  Scale scale = Scale::linear;

  static SweepSpec parse(std::string_view parameter, std::string_view text);
  std::vector<double> values() const;
  std::string descriptor() const;
};

// Locale-independent number formatting.
std::string sig17(double v);
double parse_number(std::string_view token, std::string_view what);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string sha256_hex(std::string_view data);

// SUPERBURST_THREADS overrides the flag; 0 means hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

// Collects artifacts; writes them under DIR with a manifest, or streams the
// primary artifact to stdout when no directory is set.
class OutputSink {
 public:
  OutputSink(std::optional<std::string> dir, std::vector<std::string> argv);
  void add(const std::string& name, std::string content, bool primary);
  void set(const std::string& key, nlohmann::json value) { meta_[key] = std::move(value); }
  void finish();

 private:
  std::optional<std::string> dir_;
  std::vector<std::string> argv_;
  nlohmann::json meta_ = nlohmann::json::object();
  struct Artifact {
    std::string name, content;
    bool primary;
  };
  std::vector<Artifact> artifacts_;
};

// RAII wrappers over the C handles.
template <class T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  explicit Handle(T* p) : p_(p) {}
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p_(o.p_) { o.p_ = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    if (this != &o) {
      reset();
      p_ = o.p_;
      o.p_ = nullptr;
    }
    return *this;
  }
  ~Handle() { reset(); }
  void reset() {
    if (p_) Free(p_);
    p_ = nullptr;
  }
  T* get() const { return p_; }
  T** out() {
    reset();
    return &p_;
  }

 private:
  T* p_ = nullptr;
};

using Lattice = Handle<sb_lattice, sb_lattice_free>;
using Model = Handle<sb_model, sb_model_free>;
using Matrix = Handle<sb_matrix, sb_matrix_free>;
using Spectrum = Handle<sb_spectrum, sb_spectrum_free>;
using Trace = Handle<sb_trace, sb_trace_free>;

Lattice parse_lattice(const std::string& descriptor);
Model parse_model(const std::string& descriptor);
std::string lattice_descriptor(const sb_lattice* lattice);
std::string model_descriptor(const sb_model* model);
std::string model_kind(const sb_model* model);
std::vector<double> eigenvalues(const sb_spectrum* spectrum);
std::vector<double> series(const sb_trace* trace, const char* name);

}  // namespace sbcli
