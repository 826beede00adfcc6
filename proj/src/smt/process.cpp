#include "process.hpp"

#include "aev/error.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

namespace aev::detail {

namespace {

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(const Fd &) = delete;
    Fd & operator=(const Fd &) = delete;
    Fd(Fd && o) noexcept : fd_(o.release()) {}
    Fd & operator=(Fd && o) noexcept {
        reset(o.release());
        return *this;
    }
    ~Fd() { reset(); }

    int get() const { return fd_; }
    int release() {
        int fd = fd_;
        fd_ = -1;
        return fd;
    }
    void reset(int fd = -1) {
        if (fd_ >= 0) { ::close(fd_); }
        fd_ = fd;
    }
    explicit operator bool() const { return fd_ >= 0; }

private:
    int fd_ = -1;
};

std::pair<Fd, Fd> make_pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) { throw SolverSpawnError(std::string("pipe: ") + std::strerror(errno)); }
    return {Fd(fds[0]), Fd(fds[1])};
}

// Stdin goes through a socket so that writing to a solver that already exited fails with EPIPE
// (MSG_NOSIGNAL) instead of raising SIGPIPE in the whole process.
std::pair<Fd, Fd> make_stdin_channel() {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
        throw SolverSpawnError(std::string("socketpair: ") + std::strerror(errno));
    }
    ::shutdown(fds[0], SHUT_WR);
    ::shutdown(fds[1], SHUT_RD);
    return {Fd(fds[0]), Fd(fds[1])};
}

int decode(int status) {
    if (WIFEXITED(status)) { return WEXITSTATUS(status); }
    if (WIFSIGNALED(status)) { return -WTERMSIG(status); }
    return -1;
}

int wait_child(pid_t pid) {
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) { return -1; }
    }
    return decode(status);
}

/// Waits until the deadline, then kills. Returns the decoded status and whether a kill was needed.
std::pair<int, bool> wait_child_until(pid_t pid, std::chrono::steady_clock::time_point deadline) {
    for (;;) {
        int status = 0;
        pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) { return {decode(status), false}; }
        if (r < 0 && errno != EINTR) { return {-1, false}; }
        if (std::chrono::steady_clock::now() >= deadline) {
            ::kill(pid, SIGKILL);
            return {wait_child(pid), true};
        }
        ::usleep(2000);
    }
}

} // namespace

ProcessResult run_process(const std::vector<std::string> & argv, const std::string & input, long timeout_ms) {
    if (argv.empty()) { throw SolverSpawnError("empty solver command"); }
    auto [in_r, in_w] = make_stdin_channel();
    auto [out_r, out_w] = make_pipe();
    auto [err_r, err_w] = make_pipe();  // reports exec failure; closes on successful exec

    std::vector<char *> args;
    for (const auto & a : argv) { args.push_back(const_cast<char *>(a.c_str())); }
    args.push_back(nullptr);

    pid_t pid = ::fork();
    if (pid < 0) { throw SolverSpawnError(std::string("fork: ") + std::strerror(errno)); }
    if (pid == 0) {
        ::dup2(in_r.get(), STDIN_FILENO);
        ::dup2(out_w.get(), STDOUT_FILENO);
        int devnull = ::open("/dev/null", O_WRONLY);
        if (devnull >= 0) { ::dup2(devnull, STDERR_FILENO); }
        ::execvp(args[0], args.data());
        int e = errno;
        [[maybe_unused]] auto n = ::write(err_w.get(), &e, sizeof e);
        ::_exit(127);
    }
    in_r.reset();
    out_w.reset();
    err_w.reset();

    int exec_errno = 0;
    ssize_t n;
    while ((n = ::read(err_r.get(), &exec_errno, sizeof exec_errno)) < 0 && errno == EINTR) {}
    if (n == static_cast<ssize_t>(sizeof exec_errno)) {
        wait_child(pid);
        throw SolverSpawnError("cannot run '" + argv[0] + "': " + std::strerror(exec_errno));
    }

    ::fcntl(in_w.get(), F_SETFL, O_NONBLOCK);
    ::fcntl(out_r.get(), F_SETFL, O_NONBLOCK);

    ProcessResult result;
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    std::size_t written = 0;
    if (input.empty()) { in_w.reset(); }
    char buf[8192];
    while (out_r) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
        if (left <= 0) {
            result.timed_out = true;
            break;
        }
        pollfd fds[2];
        nfds_t count = 0;
        fds[count++] = pollfd{out_r.get(), POLLIN, 0};
        if (in_w) { fds[count++] = pollfd{in_w.get(), POLLOUT, 0}; }
        int rc = ::poll(fds, count, static_cast<int>(left));
        if (rc < 0) {
            if (errno == EINTR) { continue; }
            break;
        }
        if (count == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t w = ::send(in_w.get(), input.data() + written, input.size() - written, MSG_NOSIGNAL);
            if (w > 0) { written += static_cast<std::size_t>(w); }
            if (w < 0 && errno != EAGAIN && errno != EINTR) { written = input.size(); }
            if (written == input.size()) { in_w.reset(); }
        }
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            ssize_t r = ::read(out_r.get(), buf, sizeof buf);
            if (r > 0) {
                result.out.append(buf, static_cast<std::size_t>(r));
            } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
                out_r.reset();
            }
        }
    }
    in_w.reset();
    out_r.reset();
    if (result.timed_out) {
        ::kill(pid, SIGKILL);
        result.status = wait_child(pid);
    } else {
        auto [status, killed] = wait_child_until(pid, deadline);
        result.status = status;
        result.timed_out = killed;
    }
    return result;
}

} // namespace aev::detail
