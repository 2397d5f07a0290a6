#include "cli_support.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace sbcli {

void check(sb_status status, std::string_view context) {
  if (status == SB_OK) return;
  std::string msg(context);
  const char* detail = sb_last_error();
  if (detail && *detail) msg += ": " + std::string(detail);
  throw LibraryError(status, msg);
}

int exit_code(sb_status status) {
  switch (status) {
    case SB_OK: return 0;
    case SB_ERR_INVALID_ARGUMENT:
    case SB_ERR_PARSE:
    case SB_ERR_INCOMPATIBLE:
    case SB_ERR_OUT_OF_RANGE:
    case SB_ERR_UNSUPPORTED: return 2;
    default: return 3;
  }
}

double parse_number(std::string_view token, std::string_view what) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty() || !std::isfinite(v))
    throw UsageError("invalid number '" + std::string(token) + "' for " + std::string(what));
  return v;
}

SweepSpec SweepSpec::parse(std::string_view parameter, std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    auto c = text.find(':', pos);
    parts.push_back(text.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw UsageError("sweep '" + std::string(text) + "' must be start:stop:steps[:lin|:log]");
  SweepSpec s;
  s.parameter = std::string(parameter);
  s.start = parse_number(parts[0], "sweep start");
  s.stop = parse_number(parts[1], "sweep stop");
  double steps = parse_number(parts[2], "sweep steps");
  if (steps < 1 || steps != std::floor(steps)) throw UsageError("sweep steps must be an integer >= 1");
  s.steps = static_cast<std::size_t>(steps);
  if (parts.size() == 4) {
    if (parts[3] == "log")
      s.scale = Scale::log;
    else if (parts[3] != "lin")
      throw UsageError("sweep scale '" + std::string(parts[3]) + "' must be lin or log");
  }
  if (s.scale == Scale::log && !(s.start > 0.0 && s.stop > 0.0))
    throw UsageError("log sweep needs positive endpoints");
  return s;
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> v;
  if (steps == 1) return {start};
  for (std::size_t i = 0; i < steps; ++i) {
    double f = static_cast<double>(i) / static_cast<double>(steps - 1);
    if (scale == Scale::log)
      v.push_back(std::exp(std::log(start) + f * (std::log(stop) - std::log(start))));
    else
      v.push_back(start + f * (stop - start));
  }
  v.back() = stop;
  return v;
}

std::string SweepSpec::descriptor() const {
  return sig17(start) + ":" + sig17(stop) + ":" + std::to_string(steps) + (scale == Scale::log ? ":log" : ":lin");
}

std::string sig17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("CSV row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::size_t resolve_threads(std::size_t requested) {
  if (const char* env = std::getenv("SUPERBURST_THREADS"); env && *env) {
    double v = parse_number(env, "SUPERBURST_THREADS");
    if (v < 0 || v != std::floor(v)) throw UsageError("SUPERBURST_THREADS must be a non-negative integer");
    requested = static_cast<std::size_t>(v);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!first) first = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

OutputSink::OutputSink(std::optional<std::string> dir, std::vector<std::string> argv)
    : dir_(std::move(dir)), argv_(std::move(argv)) {}

void OutputSink::add(const std::string& name, std::string content, bool primary) {
  artifacts_.push_back({name, std::move(content), primary});
}

void OutputSink::finish() {
  if (!dir_) {
    for (const auto& a : artifacts_) (a.primary ? std::cout : std::cerr) << a.content;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec) throw LibraryError(SB_ERR_IO, "cannot create output directory '" + *dir_ + "': " + ec.message());
  nlohmann::json manifest = meta_;
  std::string command;
  for (const auto& a : argv_) command += (command.empty() ? "" : " ") + a;
  manifest["command"] = command;
  manifest["argv"] = argv_;
  manifest["version"] = sb_version();
  manifest["outputs"] = nlohmann::json::array();
  auto write = [&](const std::string& name, const std::string& content) {
    fs::path p = fs::path(*dir_) / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    f.close();
    if (!f) throw LibraryError(SB_ERR_IO, "cannot write '" + p.string() + "'");
  };
  for (const auto& a : artifacts_) {
    write(a.name, a.content);
    manifest["outputs"].push_back({{"file", a.name}, {"sha256", sha256_hex(a.content)}, {"bytes", a.content.size()}});
  }
  write("manifest.json", manifest.dump(2) + "\n");
}

namespace {

template <class H>
std::string fetch_string(const H* h, sb_status (*f)(const H*, char*, size_t, size_t*), std::string_view what) {
  size_t len = 0;
  sb_status s = f(h, nullptr, 0, &len);
  if (s != SB_OK && s != SB_ERR_BUFFER) check(s, what);
  std::string out(len + 1, '\0');
  check(f(h, out.data(), out.size(), &len), what);
  out.resize(len);
  return out;
}

}  // namespace

Lattice parse_lattice(const std::string& descriptor) {
  Lattice l;
  check(sb_lattice_parse(descriptor.c_str(), l.out()), "lattice '" + descriptor + "'");
  return l;
}

Model parse_model(const std::string& descriptor) {
  Model m;
  check(sb_model_parse(descriptor.c_str(), m.out()), "model '" + descriptor + "'");
  return m;
}

std::string lattice_descriptor(const sb_lattice* lattice) {
  return fetch_string(lattice, sb_lattice_descriptor, "lattice descriptor");
}
std::string model_descriptor(const sb_model* model) { return fetch_string(model, sb_model_descriptor, "model descriptor"); }
std::string model_kind(const sb_model* model) { return fetch_string(model, sb_model_kind, "model kind"); }

std::vector<double> eigenvalues(const sb_spectrum* spectrum) {
  size_t n = 0;
  sb_status s = sb_spectrum_eigenvalues(spectrum, nullptr, 0, &n);
  if (s != SB_OK && s != SB_ERR_BUFFER) check(s, "eigenvalues");
  std::vector<double> v(n);
  check(sb_spectrum_eigenvalues(spectrum, v.data(), v.size(), &n), "eigenvalues");
  return v;
}

std::vector<double> series(const sb_trace* trace, const char* name) {
  size_t n = 0;
  check(sb_trace_length(trace, &n), "trace length");
  std::vector<double> v(n);
  check(sb_trace_series(trace, name, v.data(), v.size(), &n), std::string("trace series ") + name);
  return v;
}

}  // namespace sbcli
