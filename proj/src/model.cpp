#include "vnfq/model.hpp"

#include <cmath>

namespace vnfq {

QueueRole queue_role(int queue) {
    switch (queue) {
        case 1:
        case 4:
        case 6:
            return QueueRole::Processing;
        case 2:
        case 3:
        case 5:
            return QueueRole::Transmission;
        default:
            throw std::out_of_range("queue index must be 1..6");
    }
}

int queue_successor(int queue) {
    switch (queue) {
        case 1: return 2;
        case 2: return 6;
        case 3: return 4;
        case 4: return 5;
        case 5: return 6;
        case 6: return 0;
        default: throw std::out_of_range("queue index must be 1..6");
    }
}

namespace {

void check_probability(const std::string& field, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(field, field + " must be in [0, 1], got " + std::to_string(v));
    }
}

} // namespace

SystemParams validate(const SystemParams& params) {
    check_probability("p", params.p);
    check_probability("alpha", params.alpha);
    for (int i = 0; i < 6; ++i) {
        const std::string field = "mu" + std::to_string(i + 1);
        const double v = params.mu[i];
        // mu = 0 would leave a queue permanently unserved and the downstream
        // steady-state solves degenerate; rejected.
        if (!(v > 0.0 && v <= 1.0)) {
            throw ValidationError(field, field + " must be in (0, 1], got " + std::to_string(v));
        }
    }
    for (int i = 0; i < 5; ++i) {
        const std::string field = "M" + std::to_string(i + 1);
        if (params.buffer[i] < 1) {
            throw ValidationError(field,
                                  field + " must be a positive integer, got " +
                                      std::to_string(params.buffer[i]));
        }
    }
    return params;
}

} // namespace vnfq
