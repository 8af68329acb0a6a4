#include "lunc/state_hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <string_view>
#include <variant>

namespace lunc {

namespace {

class Encoder {
 public:
  Encoder() = default;
  explicit Encoder(EVP_MD_CTX* ctx) : ctx_(ctx) { out_.reserve(kChunk + 256); }

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u64(std::uint64_t v) {
    flush_if_full();
    std::array<std::uint8_t, 8> be;
    for (std::size_t i = 0; i < 8; ++i) be[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
    out_.insert(out_.end(), be.begin(), be.end());
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void u128(Amount v) {
    u64(static_cast<std::uint64_t>(v >> 64));
    u64(static_cast<std::uint64_t>(v));
  }
  void i128(ProposerPriority v) { u128(static_cast<Amount>(v)); }
  void boolean(bool b) { u8(b ? 1 : 0); }
  void str(std::string_view s) {
    u64(s.size());
    flush_if_full();
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void ratio(const Ratio& r) { str(r.to_string()); }
  void coins(const Coins& c) {
    u64(c.size());
    for (const auto& [denom, amount] : c) {
      str(denom);
      u128(amount);
    }
  }
  void coin(const Coin& c) {
    str(c.denom);
    u128(c.amount);
  }
  void policy(const PolicyConstraints& p) {
    ratio(p.rate_min);
    ratio(p.rate_max);
    coin(p.cap);
    ratio(p.change_rate_max);
  }
  template <typename Map, typename Fn>
  void map(const Map& m, Fn&& each) {
    u64(m.size());
    for (const auto& [k, v] : m) each(k, v);
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

  void finish(Digest& digest) {
    EVP_DigestUpdate(ctx_, out_.data(), out_.size());
    out_.clear();
    EVP_DigestFinal_ex(ctx_, digest.data(), nullptr);
  }

 private:
  static constexpr std::size_t kChunk = 8192;

  void flush_if_full() {
    if (ctx_ == nullptr || out_.size() < kChunk) return;
    EVP_DigestUpdate(ctx_, out_.data(), out_.size());
    out_.clear();
  }

  EVP_MD_CTX* ctx_ = nullptr;
  std::vector<std::uint8_t> out_;
};

void encode_ledger(Encoder& e, const Ledger& l) {
  e.map(l.accounts(), [&](const auto& k, const auto& v) {
    e.str(k);
    e.coins(v);
  });
  e.map(l.modules(), [&](const auto& k, const auto& v) {
    e.str(k);
    e.coins(v);
  });
  const SupplyLedger& s = l.supply();
  e.coins(s.genesis);
  e.coins(s.totals);
  e.coins(s.cumulative_minted);
  e.coins(s.cumulative_burned);
}

void encode_staking(Encoder& e, const Staking& s) {
  const StakingParams& p = s.params();
  e.u128(p.power_reduction);
  e.i64(p.unbonding_period_blocks);
  e.ratio(p.max_delegation_power_fraction);
  e.boolean(p.float32_cap_compat);
  e.str(p.bond_denom);
  const HeightGates& g = s.gates();
  e.i64(g.staking_power_upgrade);
  e.i64(g.delegate_power_revert);
  e.i64(g.staking_power_revert);
  e.i64(g.protect_power);
  e.map(s.validators(), [&](const auto& k, const Validator& v) {
    e.str(k);
    e.u128(v.tokens);
    e.u8(static_cast<std::uint8_t>(v.status));
    e.u8(static_cast<std::uint8_t>(v.version));
  });
  e.map(s.delegations(), [&](const DelegationKey& k, Amount shares) {
    e.str(k.delegator);
    e.str(k.validator);
    e.u128(shares);
  });
  e.u64(s.unbonding_queue().size());
  for (const auto& u : s.unbonding_queue()) {
    e.str(u.delegator);
    e.str(u.validator);
    e.u128(u.amount);
    e.i64(u.creation_height);
    e.i64(u.completion_height);
  }
}

void encode_treasury(Encoder& e, const Treasury& t) {
  e.policy(t.tax_policy());
  e.policy(t.reward_policy());
  e.boolean(t.pending_tax_policy().has_value());
  if (t.pending_tax_policy()) e.policy(*t.pending_tax_policy());
  e.boolean(t.pending_reward_policy().has_value());
  if (t.pending_reward_policy()) e.policy(*t.pending_reward_policy());
  e.ratio(t.tax_rate());
  e.ratio(t.reward_weight());
  e.i64(t.epoch_length_blocks());
  e.map(t.tax_caps(), [&](const auto& k, Amount v) {
    e.str(k);
    e.u128(v);
  });
  e.u128(t.default_tax_cap());
  e.coins(t.epoch_burned());
}

void encode_distribution(Encoder& e, const Distribution& d) {
  e.ratio(d.params().community_tax);
  e.ratio(d.params().base_proposer_reward);
  e.ratio(d.params().bonus_proposer_reward);
  e.map(d.all_validator_accrued(), [&](const auto& k, const Coins& c) {
    e.str(k);
    e.coins(c);
  });
  e.map(d.all_delegation_rewards(), [&](const DelegationKey& k, const Coins& c) {
    e.str(k.delegator);
    e.str(k.validator);
    e.coins(c);
  });
}

void encode_proposal(Encoder& e, const Proposal& p) {
  e.u64(p.id);
  e.u8(static_cast<std::uint8_t>(p.content.kind));
  e.str(p.content.title);
  e.str(p.content.description);
  e.u64(p.content.changes.size());
  for (const auto& c : p.content.changes) {
    e.str(c.subspace);
    e.str(c.key);
    e.str(c.value);
  }
  e.boolean(p.content.spend_target.burn);
  e.str(p.content.spend_target.recipient);
  e.coins(p.content.spend_amount);
  e.i64(p.submit_height);
  e.i64(p.voting_end_height);
  e.u8(static_cast<std::uint8_t>(p.status));
  e.boolean(p.tally.has_value());
  if (p.tally) {
    e.u128(p.tally->yes);
    e.u128(p.tally->no);
    e.u128(p.tally->no_with_veto);
    e.u128(p.tally->abstain);
    e.u128(p.tally->total_bonded);
  }
}

void encode_governance(Encoder& e, const Governance& g) {
  e.ratio(g.params().quorum);
  e.ratio(g.params().threshold);
  e.ratio(g.params().veto_threshold);
  e.i64(g.params().voting_period_blocks);
  e.map(g.proposals(), [&](ProposalId id, const Proposal& p) {
    e.u64(id);
    encode_proposal(e, p);
    const auto* votes = g.votes_for(id);
    e.u64(votes == nullptr ? 0 : votes->size());
    if (votes != nullptr) {
      for (const auto& [voter, option] : *votes) {
        e.str(voter);
        e.u8(static_cast<std::uint8_t>(option));
      }
    }
  });
}

void encode_state(Encoder& e, const ChainState& state) {
  e.str("lunc-state-v1");
  e.str(state.config.chain_id);
  e.i64(state.config.genesis_height);
  e.i64(state.config.genesis_time);
  e.u64(state.config.denoms.size());
  for (const auto& d : state.config.denoms) e.str(d);
  const AnteConfig& a = state.config.ante;
  e.u64(a.exempt_denoms.size());
  for (const auto& d : a.exempt_denoms) e.str(d);
  e.i64(a.tax_power_upgrade_height);
  e.ratio(a.gas_price);
  e.str(a.fee_denom);

  e.i64(state.height);
  encode_ledger(e, state.ledger);
  encode_staking(e, state.staking);
  encode_treasury(e, state.treasury);
  encode_distribution(e, state.distribution);
  encode_governance(e, state.governance);
  e.boolean(state.transfer.send_enabled);
  e.boolean(state.transfer.receive_enabled);
  e.u64(state.pending_proposals.size());
  for (ProposalId id : state.pending_proposals) e.u64(id);
  e.map(state.proposer_priority, [&](const auto& k, ProposerPriority p) {
    e.str(k);
    e.i128(p);
  });
}

}  // namespace

std::vector<std::uint8_t> canonical_bytes(const ChainState& state) {
  Encoder e;
  encode_state(e, state);
  return e.take();
}

Digest state_hash(const ChainState& state) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  Encoder e(ctx.get());
  encode_state(e, state);
  Digest out{};
  e.finish(out);
  return out;
}

std::string to_hex(const Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (auto b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

}  // namespace lunc
