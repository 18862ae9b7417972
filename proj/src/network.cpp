#include "scilla/network.hpp"

namespace scilla {

void NetworkState::deploy(ContractInstance inst) {
  Address id = inst.state0.my_id;
  CState s = inst.state0;
  contracts.insert_or_assign(std::move(id), Deployed{std::move(inst), std::move(s)});
}

Deployed* NetworkState::find(const Address& a) {
  auto it = contracts.find(a);
  return it == contracts.end() ? nullptr : &it->second;
}

const char* network_status_name(NetworkStatus s) {
  return s == NetworkStatus::Completed ? "Completed" : "BudgetExhausted";
}

NetworkResult run_network(NetworkState& net, const Message& initial, std::size_t budget) {
  if (net.find(initial.to) == nullptr) throw UnknownAddress(initial.to);

  NetworkResult res;
  std::optional<Message> pending = initial;
  // Whether the pending message's send pushed the topmost stack entry.
  bool pushed_for_pending = false;

  while (pending) {
    Message m = std::move(*pending);
    pending.reset();

    const bool is_return = m.method.text() == kReturnTag && !net.stack.empty();
    if (is_return) m.to = net.stack.back().contract;

    Deployed* target = net.find(m.to);
    if (target == nullptr) {
      res.deliveries.push_back(m);
      if (pushed_for_pending) {
        res.diagnostics.push_back(Diagnostic{
            Severity::Warning, SourceSpan{}, "UNKNOWN_ADDRESS",
            "continuation '" + net.stack.back().continuation + "' popped: '" + m.to.id +
                "' is not a contract"});
        net.stack.pop_back();
      }
      pushed_for_pending = false;
      continue;
    }
    pushed_for_pending = false;

    if (res.steps.size() >= budget) {
      res.status = NetworkStatus::BudgetExhausted;
      return res;
    }

    std::string invoked;
    TransitionOutcome outcome;
    if (is_return) {
      invoked = net.stack.back().continuation;
      net.stack.pop_back();
      outcome = invoke_continuation(target->inst, invoked, target->state.balance,
                                    target->state.fields, m, net.block);
    } else {
      outcome = apply_transition(target->inst, target->state.balance, target->state.fields, m,
                                 net.block);
    }
    std::string next_k = outcome.continuation;
    Step st = make_step(target->state, m, std::move(outcome));
    target->state = st.post;
    if (st.out) {
      pending = *st.out;
      if (!next_k.empty()) {
        net.stack.push_back(StackEntry{target->state.my_id, next_k});
        pushed_for_pending = true;
      }
    }
    res.steps.push_back(NetworkStep{target->state.my_id, std::move(m), std::move(invoked),
                                    std::move(st)});
  }

  res.dropped = std::move(net.stack);
  net.stack.clear();
  return res;
}

}  // namespace scilla
