#ifndef HENKIN_EXTERNAL_ORACLE_HPP
#define HENKIN_EXTERNAL_ORACLE_HPP

#include <csignal>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <fcntl.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/oracle.hpp"
#include "henkin/parse.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// Talks to a decision procedure running as a child process:
///
///     SAT <formula>            ->  YES | NO | ERR <msg>
///     EQ <formula> ;; <formula> ->  YES | NO | ERR <msg>
///
/// one request per line. Requests are serialized; the child is started
/// with `/bin/sh -c command` and lives as long as the oracle.
class external_oracle final : public theory_oracle {
public:
  external_oracle(signature sig, std::string command, bool complete = false)
      : sig_(std::move(sig)), command_(std::move(command)), complete_(complete) {
    std::signal(SIGPIPE, SIG_IGN);
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0) throw error(errc::oracle_error, "pipe failed");
    if (pipe(from_child) != 0) {
      close(to_child[0]);
      close(to_child[1]);
      throw error(errc::oracle_error, "pipe failed");
    }
    pid_ = fork();
    if (pid_ < 0) throw error(errc::oracle_error, "fork failed");
    if (pid_ == 0) {
      dup2(to_child[0], 0);
      dup2(from_child[1], 1);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    out_ = to_child[1];
    in_ = from_child[0];
    fcntl(out_, F_SETFD, FD_CLOEXEC);
    fcntl(in_, F_SETFD, FD_CLOEXEC);
  }

  external_oracle(const external_oracle&) = delete;
  external_oracle& operator=(const external_oracle&) = delete;

  ~external_oracle() override {
    if (out_ >= 0) close(out_);
    if (in_ >= 0) close(in_);
    if (pid_ > 0) {
      int status = 0;
      waitpid(pid_, &status, 0);
    }
  }

  const signature& sig() const override { return sig_; }
  std::string kind() const override { return "external"; }
  bool complete() const override { return complete_; }
  const std::string& command() const { return command_; }

  bool is_consistent_all(const std::vector<formula>& fs) const override {
    for (const auto& f : fs) validate(f, sig_);
    return ask("SAT " + to_string(conj_all(fs)));
  }

  bool entails_equal(const formula& f, const formula& g) const override {
    validate(f, sig_);
    validate(g, sig_);
    if (f == g) return true;
    return ask("EQ " + to_string(f) + " ;; " + to_string(g));
  }

private:
  bool ask(const std::string& request) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::string line = request + "\n";
    std::size_t sent = 0;
    while (sent < line.size()) {
      ssize_t k = write(out_, line.data() + sent, line.size() - sent);
      if (k <= 0) throw error(errc::oracle_error, "external oracle '" + command_ + "' closed its input");
      sent += static_cast<std::size_t>(k);
    }
    std::string reply = read_line();
    if (reply == "YES") return true;
    if (reply == "NO") return false;
    if (reply.rfind("ERR", 0) == 0) throw error(errc::oracle_error, "external oracle: " + reply.substr(reply.size() > 3 ? 4 : 3));
    throw error(errc::oracle_error, "external oracle sent unexpected reply '" + reply + "'");
  }

  std::string read_line() const {
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char chunk[4096];
      ssize_t k = read(in_, chunk, sizeof chunk);
      if (k <= 0) throw error(errc::oracle_error, "external oracle '" + command_ + "' exited");
      buffer_.append(chunk, static_cast<std::size_t>(k));
    }
  }

  signature sig_;
  std::string command_;
  bool complete_;
  pid_t pid_ = -1;
  int out_ = -1, in_ = -1;
  mutable std::string buffer_;
  mutable std::mutex mu_;
};

/// Answers the external protocol from `in` using `oracle`, one reply per
/// request line, until end of input.
inline void serve_oracle(const theory_oracle& oracle, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      bool answer;
      if (line.rfind("SAT ", 0) == 0) {
        answer = oracle.is_consistent(parse_formula(line.substr(4), oracle.sig()));
      } else if (line.rfind("EQ ", 0) == 0) {
        auto sep = line.find(";;", 3);
        if (sep == std::string::npos) throw error(errc::syntax_error, "EQ request needs ';;'");
        formula f = parse_formula(line.substr(3, sep - 3), oracle.sig());
        formula g = parse_formula(line.substr(sep + 2), oracle.sig());
        answer = oracle.entails_equal(f, g);
      } else {
        throw error(errc::syntax_error, "unknown request");
      }
      out << (answer ? "YES" : "NO") << '\n';
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (auto& c : msg)
        if (c == '\n') c = ' ';
      out << "ERR " << msg << '\n';
    }
    out.flush();
  }
}

}  // namespace henkin

#endif
