#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <regex>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/harness.hpp"

namespace cqb::harness {

const char* polarity_name(Polarity p) { return p == Polarity::Truth ? "truth" : "falsity"; }

Polarity polarity_from_name(const std::string& s) {
  if (s == "truth") return Polarity::Truth;
  if (s == "falsity") return Polarity::Falsity;
  throw ParseError("unknown polarity '" + s + "'");
}

void ProverConfig::validate() const {
  if (id.empty()) throw ConfigError("prover config without id");
  if (executable.empty()) throw ConfigError("prover '" + id + "' has no executable");
  if (time_limit_s <= 0) throw ConfigError("prover '" + id + "' needs a positive time limit");
  if (args_template.find("{problem}") == std::string::npos)
    throw ConfigError("prover '" + id + "' argument template lacks the {problem} placeholder");
}

const char* szs_status_name(SzsStatus s) {
  switch (s) {
    case SzsStatus::Theorem: return "Theorem";
    case SzsStatus::CounterSatisfiable: return "CounterSatisfiable";
    case SzsStatus::Satisfiable: return "Satisfiable";
    case SzsStatus::Timeout: return "Timeout";
    case SzsStatus::GaveUp: return "GaveUp";
    case SzsStatus::ResourceOut: return "ResourceOut";
    case SzsStatus::Unknown: return "Unknown";
    case SzsStatus::Error: return "Error";
  }
  return "Unknown";
}

SzsStatus szs_status_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(SzsStatus::Error); ++i)
    if (s == szs_status_name(static_cast<SzsStatus>(i))) return static_cast<SzsStatus>(i);
  throw ParseError("unknown SZS status '" + s + "'");
}

std::optional<SzsStatus> parse_szs_line(const std::string& output) {
  static const std::regex pattern(R"(SZS\s+status[:]?\s+([A-Za-z]+))");
  std::smatch m;
  if (!std::regex_search(output, m, pattern)) return std::nullopt;
  std::string token = m[1];
  if (token == "Theorem" || token == "Unsatisfiable") return SzsStatus::Theorem;
  if (token == "CounterSatisfiable") return SzsStatus::CounterSatisfiable;
  if (token == "Satisfiable") return SzsStatus::Satisfiable;
  if (token == "Timeout") return SzsStatus::Timeout;
  if (token == "GaveUp") return SzsStatus::GaveUp;
  if (token == "ResourceOut" || token == "MemoryOut") return SzsStatus::ResourceOut;
  if (token == "Error" || token == "InputError" || token == "UsageError" ||
      token == "SyntaxError" || token == "OSError")
    return SzsStatus::Error;
  return SzsStatus::Unknown;
}

namespace {

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace

std::set<std::string> extract_used_axioms(const std::string& output,
                                          const std::string& ontology_path) {
  // Matches both quoted and bare file names in source annotations:
  //   file('/path/onto.p', ax_name)   file(onto.p,ax_name)
  static const std::regex pattern(
      R"(file\(\s*'?([^',()]+)'?\s*,\s*([A-Za-z0-9_]+)\s*\))");
  std::set<std::string> out;
  std::string target = basename_of(ontology_path);
  auto begin = std::sregex_iterator(output.begin(), output.end(), pattern);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    std::string path = (*it)[1];
    if (basename_of(path) == target) out.insert((*it)[2]);
  }
  return out;
}

namespace {

std::string fnv1a_digest(const std::string& data) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::string> instantiate_args(const ProverConfig& config, const Job& job) {
  std::vector<std::string> args;
  std::istringstream in(config.args_template);
  std::string tok;
  auto substitute = [&](std::string s) {
    auto replace_all = [&s](const std::string& from, const std::string& to) {
      size_t pos = 0;
      while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
      }
    };
    replace_all("{problem}", job.problem_file);
    replace_all("{time_s}", std::to_string(config.time_limit_s));
    replace_all("{mem_mib}", std::to_string(config.memory_limit_mib));
    return s;
  };
  while (in >> tok) args.push_back(substitute(tok));
  return args;
}

constexpr size_t kMaxCapturedOutput = 32u << 20;

}  // namespace

RunRecord run_job(const Job& job, const ProverConfig& config,
                  const std::string& ontology_path) {
  RunRecord record;
  record.problem_id = job.problem_id;
  record.polarity = job.polarity;
  record.prover_id = config.id;

  std::vector<std::string> args = instantiate_args(config, job);
  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(config.executable.c_str()));
  for (auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  int out_pipe[2];
  int err_pipe[2];  // exec-failure reporting, CLOEXEC
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
    throw IoError(std::string("pipe: ") + std::strerror(errno));
  fcntl(err_pipe[1], F_SETFD, FD_CLOEXEC);

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw IoError(std::string("fork: ") + std::strerror(errno));

  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(out_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    if (config.memory_limit_mib > 0) {
      rlimit lim;
      lim.rlim_cur = lim.rlim_max =
          static_cast<rlim_t>(config.memory_limit_mib) * 1024 * 1024;
      setrlimit(RLIMIT_AS, &lim);
    }
    execvp(config.executable.c_str(), argv.data());
    int err = errno;
    ssize_t ignored = write(err_pipe[1], &err, sizeof err);
    (void)ignored;
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);

  // Exec failure shows up as an errno on the side channel.
  int exec_errno = 0;
  {
    ssize_t n = read(err_pipe[0], &exec_errno, sizeof exec_errno);
    if (n <= 0) exec_errno = 0;
  }
  close(err_pipe[0]);
  if (exec_errno != 0) {
    close(out_pipe[0]);
    waitpid(pid, nullptr, 0);
    record.status = SzsStatus::Error;
    record.message = std::string("cannot execute '") + config.executable +
                     "': " + std::strerror(exec_errno);
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    record.output_digest = fnv1a_digest("");
    return record;
  }

  std::string output;
  bool killed = false;
  const auto deadline = start + std::chrono::seconds(config.time_limit_s);
  const auto grace = std::chrono::milliseconds(500);
  bool sent_term = false;
  auto term_time = std::chrono::steady_clock::time_point{};

  while (true) {
    auto now = std::chrono::steady_clock::now();
    if (!sent_term && now >= deadline) {
      kill(-pid, SIGTERM);
      sent_term = true;
      killed = true;
      term_time = now;
    } else if (sent_term && now >= term_time + grace) {
      kill(-pid, SIGKILL);
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    int timeout_ms = 100;
    int rc = poll(&pfd, 1, timeout_ms);
    if (rc > 0 && (pfd.revents & (POLLIN | POLLHUP | POLLERR))) {
      char buf[8192];
      ssize_t n = read(out_pipe[0], buf, sizeof buf);
      if (n > 0) {
        if (output.size() < kMaxCapturedOutput)
          output.append(buf, static_cast<size_t>(std::min<ssize_t>(
                                 n, static_cast<ssize_t>(kMaxCapturedOutput - output.size()))));
        continue;
      }
      if (n == 0) break;  // EOF: child closed its end
      if (errno != EINTR && errno != EAGAIN) break;
    }
  }
  close(out_pipe[0]);

  int wait_status = 0;
  waitpid(pid, &wait_status, 0);
  if (killed) kill(-pid, SIGKILL);  // sweep any grandchildren

  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  record.output_digest = fnv1a_digest(output);

  auto status = parse_szs_line(output);
  if (status) {
    record.status = *status;
  } else if (killed) {
    record.status = SzsStatus::Timeout;
  } else {
    record.status = SzsStatus::Unknown;
    record.message = "no SZS status line in prover output";
  }

  if (record.status == SzsStatus::Theorem) {
    auto used = extract_used_axioms(output, ontology_path);
    record.used_axioms.assign(used.begin(), used.end());
    // A proof that raced the deadline still respects the configured limit.
    if (record.wall_time_s > config.time_limit_s)
      record.wall_time_s = config.time_limit_s;
  }
  return record;
}

}  // namespace cqb::harness
