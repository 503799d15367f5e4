#include "smtuq/solver.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "smtuq/errors.hpp"

namespace smtuq {

namespace {

// Closes both ends of a pipe on scope exit.
struct PipePair {
  int fds[2] = {-1, -1};
  ~PipePair() {
    if (fds[0] >= 0) ::close(fds[0]);
    if (fds[1] >= 0) ::close(fds[1]);
  }
};

std::string first_line(const std::string& text) {
  const std::size_t end = text.find('\n');
  std::string line = end == std::string::npos ? text : text.substr(0, end);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  return line;
}

}  // namespace

SolverVerdict run_solver(const std::string& program, const SolverConfig& config) {
  if (config.command.empty()) throw SolverNotFound("(empty command)");
  if (program.empty()) throw SpawnFailure("empty program");

  PipePair to_child, from_child;
  if (::pipe(to_child.fds) != 0 || ::pipe(from_child.fds) != 0)
    throw SpawnFailure(std::strerror(errno));

  const pid_t pid = ::fork();
  if (pid < 0) throw SpawnFailure(std::strerror(errno));

  if (pid == 0) {
    ::dup2(to_child.fds[0], STDIN_FILENO);
    ::dup2(from_child.fds[1], STDOUT_FILENO);
    ::close(to_child.fds[0]);
    ::close(to_child.fds[1]);
    ::close(from_child.fds[0]);
    ::close(from_child.fds[1]);
    ::execl("/bin/sh", "sh", "-c", config.command.c_str(),
            static_cast<char*>(nullptr));
    _exit(127);
  }

  ::close(to_child.fds[0]);
  to_child.fds[0] = -1;
  ::close(from_child.fds[1]);
  from_child.fds[1] = -1;

  // Feed the program, ignoring EPIPE from solvers that exit early.
  signal(SIGPIPE, SIG_IGN);
  std::size_t written = 0;
  while (written < program.size()) {
    const ssize_t n = ::write(to_child.fds[1], program.data() + written,
                              program.size() - written);
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  ::close(to_child.fds[1]);
  to_child.fds[1] = -1;

  ::fcntl(from_child.fds[0], F_SETFL, O_NONBLOCK);

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(config.timeout_seconds);
  std::string output;
  bool timed_out = false;
  int status = 0;
  for (;;) {
    char buf[4096];
    ssize_t n;
    while ((n = ::read(from_child.fds[0], buf, sizeof(buf))) > 0)
      output.append(buf, static_cast<std::size_t>(n));

    const pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  // Drain whatever remains after exit.
  char buf[4096];
  ssize_t n;
  while ((n = ::read(from_child.fds[0], buf, sizeof(buf))) > 0)
    output.append(buf, static_cast<std::size_t>(n));

  if (timed_out) return SolverVerdict::Timeout;
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw SolverNotFound(config.command);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    return SolverVerdict::Error;

  const std::string verdict = first_line(output);
  if (verdict == "sat") return SolverVerdict::Sat;
  if (verdict == "unsat") return SolverVerdict::Unsat;
  if (verdict == "unknown") return SolverVerdict::Unknown;
  return SolverVerdict::Error;
}

}  // namespace smtuq
