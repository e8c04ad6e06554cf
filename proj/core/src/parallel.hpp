#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace desconf::detail {

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    return jobs;
}

/// Runs body(task, local) for every task in [0, tasks), worker w taking tasks w, w+jobs, ...
/// Returns the per-worker locals in worker order; merging them is up to the caller and must
/// be associative so the outcome does not depend on the worker count.
template <class Local, class Body>
std::vector<Local> partitioned(std::size_t tasks, unsigned jobs, Body body) {
    jobs = static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(tasks, 1)));
    std::vector<Local> locals(jobs);
    if (jobs == 1) {
        for (std::size_t t = 0; t < tasks; ++t) body(t, locals[0]);
        return locals;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (std::size_t t = w; t < tasks; t += jobs) body(t, locals[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return locals;
}

}  // namespace desconf::detail
