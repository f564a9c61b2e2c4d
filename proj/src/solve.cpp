#include "hras/solve.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "hras/errors.hpp"

#ifndef HRAS_DEFAULT_BACKEND
#define HRAS_DEFAULT_BACKEND ""
#endif

namespace fs = std::filesystem;

namespace hras {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::GapFeasible: return "gap-feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::TimeLimit: return "time-limit";
  }
  return "unknown";
}

double SolveResult::value(const LinearModel& m, const std::string& name) const {
  const int id = m.find_var(name);
  if (id < 0 || static_cast<size_t>(id) >= values.size())
    throw std::out_of_range("SolveResult::value: unknown variable " + name);
  return values[static_cast<size_t>(id)];
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string tail_of(const std::string& s, size_t n = 2000) {
  return s.size() <= n ? s : s.substr(s.size() - n);
}

// Runs the bundled driver as a resident server (one per thread) so repeated
// small solves do not pay interpreter startup each time.
class ServeBackend {
 public:
  explicit ServeBackend(const std::string& cmd) {
    std::signal(SIGPIPE, SIG_IGN);
    int toChild[2], fromChild[2];
    if (pipe(toChild) != 0 || pipe(fromChild) != 0) return;
    pid_t pid = fork();
    if (pid < 0) return;
    if (pid == 0) {
      dup2(toChild[0], STDIN_FILENO);
      dup2(fromChild[1], STDOUT_FILENO);
      close(toChild[0]); close(toChild[1]);
      close(fromChild[0]); close(fromChild[1]);
      const std::string full = cmd + " --serve";
      execl("/bin/sh", "sh", "-c", full.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(toChild[0]);
    close(fromChild[1]);
    pid_ = pid;
    in_ = fdopen(toChild[1], "w");
    out_ = fdopen(fromChild[0], "r");
    if (!in_ || !out_) stop();
  }

  ~ServeBackend() { stop(); }

  bool ok() const { return pid_ > 0 && in_ && out_; }

  // Sends one request line, returns one reply line (empty on failure).
  std::string request(const std::string& line) {
    if (!ok()) return "";
    if (std::fputs((line + "\n").c_str(), in_) < 0) return "";
    if (std::fflush(in_) != 0) return "";
    char buf[4096];
    if (!std::fgets(buf, sizeof(buf), out_)) return "";
    std::string r(buf);
    while (!r.empty() && (r.back() == '\n' || r.back() == '\r')) r.pop_back();
    return r;
  }

 private:
  void stop() {
    if (in_) { std::fclose(in_); in_ = nullptr; }
    if (out_) { std::fclose(out_); out_ = nullptr; }
    if (pid_ > 0) {
      int st = 0;
      waitpid(pid_, &st, 0);
      pid_ = -1;
    }
  }

  pid_t pid_ = -1;
  FILE* in_ = nullptr;
  FILE* out_ = nullptr;
};

std::string resolve_backend(const SolveOptions& opts, bool& userProvided) {
  userProvided = true;
  if (!opts.backendCmd.empty()) return opts.backendCmd;
  if (const char* env = std::getenv("HRAS_SOLVER_CMD"); env && *env) return env;
  userProvided = false;
  return HRAS_DEFAULT_BACKEND;
}

SolveResult parse_solution(const std::string& text, const LinearModel& model) {
  SolveResult res;
  std::string status;
  bool haveStatus = false;
  std::vector<double> values(model.vars().size(), 0.0);
  bool anyVar = false;
  std::istringstream in(text);
  std::string name;
  std::string value;
  while (in >> name >> value) {
    if (name == "status") {
      status = value;
      haveStatus = true;
    } else if (name == "objective") {
      res.objective = std::strtod(value.c_str(), nullptr);
    } else if (name == "gap") {
      res.gap = std::strtod(value.c_str(), nullptr);
    } else if (name == "nodes") {
      res.nodes = std::strtol(value.c_str(), nullptr, 10);
    } else if (name == "walltime") {
      res.wallSeconds = std::strtod(value.c_str(), nullptr);
    } else {
      const int id = model.find_var(name);
      if (id >= 0) {
        values[static_cast<size_t>(id)] = std::strtod(value.c_str(), nullptr);
        anyVar = true;
      }
    }
  }
  if (!haveStatus) throw SolverError("backend wrote no status line");
  if (status == "optimal") res.status = SolveStatus::Optimal;
  else if (status == "gap-feasible") res.status = SolveStatus::GapFeasible;
  else if (status == "infeasible") res.status = SolveStatus::Infeasible;
  else if (status == "unbounded") res.status = SolveStatus::Unbounded;
  else if (status == "time-limit") res.status = SolveStatus::TimeLimit;
  else throw SolverError("backend reported unknown status '" + status + "'");
  if (anyVar) res.values = std::move(values);
  return res;
}

thread_local std::unique_ptr<ServeBackend> tlsServer;

}  // namespace

SolveResult solve(const LinearModel& model, const SolveOptions& opts) {
  if (model.vars().empty())
    throw std::invalid_argument("solve: model has no variables");
  bool userProvided = false;
  const std::string cmd = resolve_backend(opts, userProvided);
  if (cmd.empty())
    throw ConfigError("solve: no backend configured (set HRAS_SOLVER_CMD)");

  static std::atomic<uint64_t> counter{0};
  const fs::path dir =
      fs::temp_directory_path() /
      ("hras-" + std::to_string(getpid()) + "-" + std::to_string(counter++));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("solve: cannot create temp dir " + dir.string());
  const fs::path lpPath = dir / "model.lp";
  const fs::path solPath = dir / "model.sol";
  const fs::path logPath = dir / "driver.log";

  {
    std::ofstream lp(lpPath);
    lp << emit_lp_file(model);
    if (!lp) throw IoError("solve: cannot write " + lpPath.string());
  }
  if (!opts.lpOutPath.empty()) {
    fs::copy_file(lpPath, opts.lpOutPath, fs::copy_options::overwrite_existing, ec);
    if (ec) throw IoError("solve: cannot copy LP file to " + opts.lpOutPath);
  }

  const bool oneShotEnv = [] {
    const char* v = std::getenv("HRAS_SOLVER_ONESHOT");
    return v && *v && std::string(v) != "0";
  }();
  const bool useServer = !userProvided && !oneShotEnv;

  const auto t0 = std::chrono::steady_clock::now();
  bool ranViaServer = false;
  if (useServer) {
    if (!tlsServer) tlsServer = std::make_unique<ServeBackend>(cmd);
    if (tlsServer->ok()) {
      std::ostringstream req;
      req << "SOLVE " << lpPath.string() << ' ' << solPath.string() << ' '
          << opts.gap << ' ' << opts.timeLimitSeconds;
      const std::string reply = tlsServer->request(req.str());
      if (reply.rfind("OK", 0) == 0) {
        ranViaServer = true;
      } else if (reply.rfind("ERR", 0) == 0) {
        if (!opts.keepFiles) fs::remove_all(dir, ec);
        throw SolverError("backend: " + reply.substr(3));
      } else {
        tlsServer.reset();  // server died; fall back to one-shot below
      }
    }
  }
  if (!ranViaServer) {
    std::ostringstream os;
    os << cmd << ' ' << lpPath << ' ' << solPath << " --gap " << opts.gap
       << " --time-limit " << opts.timeLimitSeconds << " > " << logPath
       << " 2>&1";
    const int rc = std::system(os.str().c_str());
    if (rc != 0) {
      const std::string log = tail_of(read_file(logPath));
      if (!opts.keepFiles) fs::remove_all(dir, ec);
      throw SolverError("backend exited with code " + std::to_string(rc) +
                        "\n" + log);
    }
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string solText = read_file(solPath);
  if (solText.empty()) {
    if (!opts.keepFiles) fs::remove_all(dir, ec);
    throw SolverError("backend produced no solution file");
  }
  SolveResult res = parse_solution(solText, model);
  if (res.wallSeconds == 0.0) res.wallSeconds = wall;
  if (!opts.keepFiles) fs::remove_all(dir, ec);
  return res;
}

}  // namespace hras
