#include "protoforge/errors.hpp"
#include "protoforge/sexpr.hpp"
#include "protoforge/smt_bridge.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <utility>

extern char** environ;

namespace protoforge {

namespace {

using Kind = ExternalSolverError::Kind;

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
    Fd& operator=(Fd&& o) noexcept
    {
        reset();
        fd_ = std::exchange(o.fd_, -1);
        return *this;
    }
    ~Fd() { reset(); }

    int get() const { return fd_; }
    explicit operator bool() const { return fd_ >= 0; }
    void reset()
    {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = -1;
    }

private:
    int fd_ = -1;
};

std::pair<Fd, Fd> make_pipe()
{
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0)
        throw ExternalSolverError(Kind::Spawn, std::string("pipe: ") + std::strerror(errno));
    return {Fd(fds[0]), Fd(fds[1])};
}

/// Blocks SIGPIPE on this thread so a solver that exits early turns our
/// writes into EPIPE instead of killing the process.
class SigpipeGuard {
public:
    SigpipeGuard()
    {
        sigset_t set;
        sigemptyset(&set);
        sigaddset(&set, SIGPIPE);
        pthread_sigmask(SIG_BLOCK, &set, &old_);
    }
    ~SigpipeGuard()
    {
        sigset_t set;
        sigemptyset(&set);
        sigaddset(&set, SIGPIPE);
        timespec zero{0, 0};
        while (sigtimedwait(&set, nullptr, &zero) > 0) {
        }
        pthread_sigmask(SIG_SETMASK, &old_, nullptr);
    }

private:
    sigset_t old_;
};

std::string first_line(const std::string& out)
{
    std::size_t pos = 0;
    while (pos < out.size()) {
        auto nl = out.find('\n', pos);
        auto line = out.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? out.size() : nl + 1;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        auto e = line.find_last_not_of(" \t\r");
        return line.substr(b, e - b + 1);
    }
    return {};
}

} // namespace

ExternalResult run_external(const std::vector<std::string>& command, std::string_view document,
                            double timeout_seconds)
{
    if (command.empty())
        throw ExternalSolverError(Kind::Spawn, "no solver command given");
    if (!(timeout_seconds > 0))
        throw ExternalSolverError(Kind::Timeout, "solver timed out (timeout " + std::to_string(timeout_seconds) + " s)");

    SigpipeGuard guard;
    auto [in_read, in_write] = make_pipe();
    auto [out_read, out_write] = make_pipe();
    auto [err_read, err_write] = make_pipe();

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_read.get(), STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_write.get(), STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err_write.get(), STDERR_FILENO);

    std::vector<char*> argv;
    for (const auto& a : command)
        argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);

    pid_t pid = -1;
    int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0)
        throw ExternalSolverError(Kind::Spawn, "cannot start '" + command[0] + "': " + std::strerror(rc));
    in_read.reset();
    out_write.reset();
    err_write.reset();

    ::fcntl(in_write.get(), F_SETFL, O_NONBLOCK);
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
    std::string out, err;
    std::size_t written = 0;
    if (document.empty())
        in_write.reset();

    while (out_read || err_read) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            ::kill(pid, SIGKILL);
            ::waitpid(pid, nullptr, 0);
            throw ExternalSolverError(Kind::Timeout, "solver timed out after " + std::to_string(timeout_seconds) + " s");
        }
        std::vector<pollfd> fds;
        if (in_write)
            fds.push_back({in_write.get(), POLLOUT, 0});
        if (out_read)
            fds.push_back({out_read.get(), POLLIN, 0});
        if (err_read)
            fds.push_back({err_read.get(), POLLIN, 0});
        int n = ::poll(fds.data(), fds.size(), int(std::min<long long>(left.count(), 1000)));
        if (n < 0 && errno != EINTR)
            break;
        for (const auto& f : fds) {
            if (!f.revents)
                continue;
            if (in_write && f.fd == in_write.get()) {
                ssize_t w = ::write(f.fd, document.data() + written, document.size() - written);
                if (w > 0)
                    written += std::size_t(w);
                if ((w < 0 && errno != EAGAIN) || written == document.size())
                    in_write.reset();
                continue;
            }
            char buf[4096];
            ssize_t r = ::read(f.fd, buf, sizeof buf);
            const bool is_out = out_read && f.fd == out_read.get();
            if (r > 0)
                (is_out ? out : err).append(buf, std::size_t(r));
            else if (r == 0 || errno != EAGAIN)
                (is_out ? out_read : err_read).reset();
        }
    }
    in_write.reset();
    ::waitpid(pid, nullptr, 0);

    ExternalResult result;
    result.output = out;
    const std::string status = first_line(out);
    if (status == "sat")
        result.status = SolverStatus::Sat;
    else if (status == "unsat")
        result.status = SolverStatus::Unsat;
    else if (status == "unknown")
        result.status = SolverStatus::Unknown;
    else
        throw ExternalSolverError(Kind::Status, "unparseable solver status '" + status + "'" +
                                                    (err.empty() ? "" : " (stderr: " + first_line(err) + ")"));

    const auto after = out.find(status) + status.size();
    if (result.status == SolverStatus::Sat) {
        result.values = out.substr(after);
    } else if (result.status == SolverStatus::Unsat) {
        // The core is the last top-level list made only of symbols.
        try {
            for (const auto& e : parse_sexprs(std::string_view(out).substr(after))) {
                if (!e.is_list || (!e.items.empty() && !e.items[0].is_list && e.items[0].atom == "error"))
                    continue;
                bool symbols = true;
                for (const auto& item : e.items)
                    symbols = symbols && !item.is_list;
                if (!symbols)
                    continue;
                result.core_names.clear();
                result.core_labels = {};
                for (const auto& item : e.items) {
                    result.core_names.push_back(item.symbol());
                    if (auto l = label_of_assertion(item.symbol()))
                        result.core_labels.insert(*l);
                }
            }
        } catch (const SmtError&) {
            // no usable core section
        }
    }
    return result;
}

} // namespace protoforge
