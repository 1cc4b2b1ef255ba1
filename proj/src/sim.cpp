#include "dpsac/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>
#include <variant>

#include "dpsac/cluster.hpp"
#include "dpsac/load.hpp"
#include "dpsac/partition.hpp"
#include "dpsac/updater.hpp"

namespace dpsac {

SchedulerKind parse_scheduler(const std::string& text) {
    if (text == "dpsac") return SchedulerKind::Dpsac;
    if (text == "mcios") return SchedulerKind::Mcios;
    if (text == "bios") return SchedulerKind::Bios;
    throw std::invalid_argument("unknown scheduler: " + text);
}

UpdaterKind parse_updater(const std::string& text) {
    if (text == "st") return UpdaterKind::SimpleThreshold;
    if (text == "dt") return UpdaterKind::DistThreshold;
    if (text == "ok") return UpdaterKind::OnlineKMeans;
    throw std::invalid_argument("unknown updater: " + text);
}

std::string scheduler_name(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::Dpsac: return "dpsac";
        case SchedulerKind::Mcios: return "mcios";
        case SchedulerKind::Bios: return "bios";
    }
    return "?";
}

std::string updater_name(UpdaterKind k) {
    switch (k) {
        case UpdaterKind::SimpleThreshold: return "st";
        case UpdaterKind::DistThreshold: return "dt";
        case UpdaterKind::OnlineKMeans: return "ok";
    }
    return "?";
}

double efficiency_now(const ApplicationRuntime& app, double t) {
    if (t < app.release) throw std::invalid_argument("efficiency queried before release");
    if (t == app.release) return app.rho();
    return app.instances_done * app.spec.compute_work() / (t - app.release);
}

MetricsReport compute_metrics(std::span<const ApplicationRuntime> completed,
                              const SystemConfig& system) {
    (void)system;
    if (completed.empty()) throw std::invalid_argument("no applications to report");
    MetricsReport r;
    double total_nodes = 0;
    double weighted = 0;
    double ceiling = 0;
    for (const auto& app : completed) {
        if (app.phase != ApplicationRuntime::Phase::Done || !app.finish)
            throw std::invalid_argument("metrics require completed applications");
        double eff = efficiency_now(app, *app.finish);
        AppMetrics m;
        m.name = app.spec.name + "#" + std::to_string(app.id);
        m.id = app.id;
        m.release = app.release;
        m.finish = *app.finish;
        m.efficiency = eff;
        m.dilation = app.rho() / eff;
        r.per_app.push_back(m);
        total_nodes += app.spec.nodes;
        weighted += app.spec.nodes * eff;
        ceiling += app.spec.nodes * app.rho();
        r.dilation = std::max(r.dilation, m.dilation);
    }
    r.system_efficiency = weighted / total_nodes;
    r.efficiency_ceiling = ceiling / total_nodes;
    return r;
}

namespace {

struct Event {
    enum class Kind { BatchArrival, AppArrival, PhaseTransition, SchedulingTick, SimulationEnd };
    double time = 0;
    int rank = 0;  // arrivals < phase transitions < ticks < end
    std::uint64_t seq = 0;
    Kind kind = Kind::SimulationEnd;
    std::vector<std::int64_t> batch;
    std::int64_t app_id = -1;
    std::int64_t cluster_id = -1;
    std::uint64_t epoch = 0;
};

constexpr std::uint64_t kAlwaysValid = ~std::uint64_t{0};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.seq > b.seq;
    }
};

int rank_of(Event::Kind k) {
    switch (k) {
        case Event::Kind::BatchArrival:
        case Event::Kind::AppArrival: return 0;
        case Event::Kind::PhaseTransition: return 1;
        case Event::Kind::SchedulingTick: return 2;
        case Event::Kind::SimulationEnd: return 3;
    }
    return 3;
}

// Active flows of one partition between scheduling ticks.
struct ClusterFlow {
    struct Rate {
        std::int64_t app_id;
        double pfs;
        double buffer;
    };
    std::vector<Rate> rates;
    double drain = 0;  // GB over the tick
    double tick_start = 0;
    double tick_len = 1;
    double last_advance = 0;
    double unit = 1;  // survives the cluster so orphans keep draining
};

class Engine {
public:
    explicit Engine(const RunConfig& cfg)
        : cfg_(cfg),
          rng_sched_(Rng::stream(cfg.seed, "scheduler")),
          rng_upd_(Rng::stream(cfg.seed, "updater")) {
        ucfg_.drift_threshold = cfg.overrides.drift_threshold;
        ucfg_.k_c = cfg.overrides.k_c;
        ucfg_.bins = cfg.overrides.bins;
        opts_.literal_buffer_test = cfg.overrides.literal_buffer_test;
        switch (cfg.updater) {
            case UpdaterKind::SimpleThreshold: updater_ = SimpleThresholdUpdater(ucfg_); break;
            case UpdaterKind::DistThreshold: updater_ = DistThresholdUpdater(ucfg_); break;
            case UpdaterKind::OnlineKMeans: updater_ = OnlineKMeansUpdater(ucfg_); break;
        }
    }

    MetricsReport execute();

private:
    // event plumbing
    void push(Event ev) {
        ev.rank = rank_of(ev.kind);
        ev.seq = seq_++;
        queue_.push(std::move(ev));
    }
    void push_tick(double t, std::int64_t cluster_id) {
        Event ev;
        ev.time = t;
        ev.kind = Event::Kind::SchedulingTick;
        ev.cluster_id = cluster_id;
        ev.epoch = epoch_;
        push(std::move(ev));
    }

    void on_batch(const Event& ev);
    void on_arrival(const Event& ev);
    void on_phase(const Event& ev);
    void on_tick(const Event& ev);

    void start_compute(ApplicationRuntime& app, double t);
    void complete_instance(ApplicationRuntime& app, double t);
    void handle_exit(ApplicationRuntime& app);

    void cluster_batch(std::span<const std::int64_t> ids, double t);
    void insert_single(ApplicationRuntime& app, double t);

    void rebuild_dists();
    std::vector<std::pair<std::int64_t, double>> cluster_eios() const;
    void establish_partitions(double t);  // fresh shares, no carryover
    void do_repartition(std::vector<CarryOver> carry, double t);
    void reset_flows(double t);
    void sync_membership();

    void advance_flow(std::int64_t cluster_id, double t);
    void advance_all(double t);

    Cluster* find_cluster(std::int64_t id) {
        for (auto& c : clusters_)
            if (c.id == id) return &c;
        return nullptr;
    }
    const LoadDistribution& dist_of(std::int64_t id) {
        auto it = dists_.find(id);
        return it == dists_.end() ? empty_dist_ : it->second;
    }

    double global_rate_at(double t) const;

    const RunConfig& cfg_;
    Rng rng_sched_;
    Rng rng_upd_;
    UpdaterConfig ucfg_;
    SchedulerOptions opts_;
    std::variant<SimpleThresholdUpdater, DistThresholdUpdater, OnlineKMeansUpdater> updater_;

    std::vector<ApplicationRuntime> apps_;
    std::vector<Cluster> clusters_;
    PartitionSet partitions_;
    std::unordered_map<std::int64_t, LoadDistribution> dists_;
    std::unordered_map<std::int64_t, ClusterFlow> flows_;
    LoadDistribution empty_dist_;

    std::priority_queue<Event, std::vector<Event>, EventLater> queue_;
    std::uint64_t seq_ = 0;
    std::uint64_t epoch_ = 0;
    std::int64_t next_cluster_id_ = 0;
    std::size_t done_count_ = 0;
    InvariantStats stats_;
    std::vector<TickRecord> trace_;
};

void Engine::sync_membership() {
    for (const auto& c : clusters_)
        for (const auto& m : c.members) apps_[static_cast<std::size_t>(m.app_id)].cluster_id = c.id;
}

void Engine::rebuild_dists() {
    dists_.clear();
    for (const auto& c : clusters_) {
        LoadDistribution d;
        for (const auto& m : c.members) {
            const auto& spec = apps_[static_cast<std::size_t>(m.app_id)].spec;
            d = d.add(spec.bandwidth, spec.io_probability());
        }
        dists_.emplace(c.id, std::move(d));
    }
}

std::vector<std::pair<std::int64_t, double>> Engine::cluster_eios() const {
    std::vector<std::pair<std::int64_t, double>> eios;
    for (const auto& c : clusters_) {
        double eio = 0;
        for (const auto& m : c.members) {
            const auto& spec = apps_[static_cast<std::size_t>(m.app_id)].spec;
            eio += spec.io_probability() * spec.bandwidth;
        }
        eios.emplace_back(c.id, eio);
    }
    return eios;
}

void Engine::reset_flows(double t) {
    epoch_ += 1;
    flows_.clear();
    for (const auto& p : partitions_.partitions) {
        ClusterFlow f;
        f.tick_start = t;
        f.last_advance = t;
        Cluster* c = find_cluster(p.cluster_id);
        f.unit = c && c->time_unit > 0 ? c->time_unit : 1.0;
        f.tick_len = f.unit;
        flows_[p.cluster_id] = f;
        push_tick(t, p.cluster_id);
    }
}

void Engine::establish_partitions(double t) {
    partitions_ = compute_shares(cluster_eios(), cfg_.system);
    reset_flows(t);
}

void Engine::do_repartition(std::vector<CarryOver> carry, double t) {
    auto eios = cluster_eios();
    std::vector<std::int64_t> new_ids;
    for (const auto& [id, eio] : eios) new_ids.push_back(id);
    for (const auto& p : partitions_.partitions) {
        if (p.held_bytes() <= 0) continue;
        bool covered = std::any_of(carry.begin(), carry.end(),
                                   [&](const CarryOver& c) { return c.old_id == p.cluster_id; });
        bool survives = std::find(new_ids.begin(), new_ids.end(), p.cluster_id) != new_ids.end();
        if (!covered && !survives) carry.push_back({p.cluster_id, new_ids});
    }
    partitions_ = repartition(partitions_, eios, carry, cfg_.system);
    reset_flows(t);
}

void Engine::start_compute(ApplicationRuntime& app, double t) {
    app.phase = ApplicationRuntime::Phase::Compute;
    app.remaining = app.spec.compute_work();
    Event ev;
    ev.time = t + app.remaining;
    ev.kind = Event::Kind::PhaseTransition;
    ev.app_id = app.id;
    ev.epoch = kAlwaysValid;
    push(std::move(ev));
}

void Engine::cluster_batch(std::span<const std::int64_t> ids, double t) {
    if (cfg_.scheduler != SchedulerKind::Dpsac) {
        // Baselines keep one global pool; the time unit is the mean io time.
        if (clusters_.empty()) {
            Cluster c;
            c.id = next_cluster_id_++;
            clusters_.push_back(c);
        }
        Cluster& c = clusters_.front();
        for (std::int64_t id : ids)
            c.members.push_back({id, apps_[static_cast<std::size_t>(id)].spec.io_time});
        c.refresh();
        rebuild_dists();
        double carry = partitions_.partitions.empty() ? 0 : partitions_.partitions.front().held_bytes();
        partitions_ = compute_shares(cluster_eios(), cfg_.system);
        partitions_.partitions.front().occupancy =
            std::min<double>(carry, partitions_.partitions.front().buffer_capacity);
        partitions_.partitions.front().drain_debt =
            carry - partitions_.partitions.front().occupancy;
        reset_flows(t);
        sync_membership();
        return;
    }

    std::vector<double> lengths;
    for (std::int64_t id : ids) lengths.push_back(apps_[static_cast<std::size_t>(id)].spec.io_time);
    int k_max = std::max(1, std::min<int>(ucfg_.k_c, static_cast<int>(lengths.size())));
    auto result = kmeans_1d_dp(lengths, k_max);

    std::vector<Cluster> fresh;
    for (const auto& group : result.clusters_for(result.chosen_k)) {
        Cluster c;
        c.id = next_cluster_id_++;
        for (std::size_t pos : group) c.members.push_back({ids[pos], lengths[pos]});
        c.refresh();
        fresh.push_back(std::move(c));
    }

    std::vector<CarryOver> carry;
    if (clusters_.empty()) {
        clusters_ = std::move(fresh);
    } else {
        MergeResult merged = merge_clusters(std::move(fresh), std::move(clusters_));
        clusters_ = std::move(merged.clusters);
        std::sort(clusters_.begin(), clusters_.end(),
                  [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
        for (const auto& [old_id, host_id] : merged.absorbed) carry.push_back({old_id, {host_id}});
    }

    rebuild_dists();
    if (partitions_.partitions.empty())
        establish_partitions(t);
    else
        do_repartition(std::move(carry), t);
    std::visit([&](auto& u) { u.rebuild(clusters_); }, updater_);
    sync_membership();
}

void Engine::insert_single(ApplicationRuntime& app, double t) {
    ClusterMember member{app.id, app.spec.io_time};
    InsertOutcome outcome;
    if (std::holds_alternative<OnlineKMeansUpdater>(updater_)) {
        outcome = std::get<OnlineKMeansUpdater>(updater_).insert(clusters_, member,
                                                                 next_cluster_id_, rng_upd_);
    } else if (std::holds_alternative<DistThresholdUpdater>(updater_)) {
        outcome = std::get<DistThresholdUpdater>(updater_).insert(clusters_, member,
                                                                  next_cluster_id_);
    } else {
        outcome = std::get<SimpleThresholdUpdater>(updater_).insert(clusters_, member,
                                                                    next_cluster_id_);
    }
    if (outcome.layout_changed) {
        rebuild_dists();
        do_repartition(std::move(outcome.carryovers), t);
    } else {
        auto it = dists_.find(outcome.cluster_id);
        if (it != dists_.end())
            it->second = it->second.add(app.spec.bandwidth, app.spec.io_probability());
    }
    sync_membership();
}

void Engine::on_batch(const Event& ev) {
    for (std::int64_t id : ev.batch) start_compute(apps_[static_cast<std::size_t>(id)], ev.time);
    advance_all(ev.time);
    if (clusters_.empty() || cfg_.scheduler != SchedulerKind::Dpsac) {
        cluster_batch(ev.batch, ev.time);
        return;
    }
    if (batch_policy(ev.batch.size(), clusters_) == BatchPolicy::ClusterAndMerge) {
        cluster_batch(ev.batch, ev.time);
    } else {
        for (std::int64_t id : ev.batch) insert_single(apps_[static_cast<std::size_t>(id)], ev.time);
    }
}

void Engine::on_arrival(const Event& ev) {
    ApplicationRuntime& app = apps_[static_cast<std::size_t>(ev.app_id)];
    start_compute(app, ev.time);
    advance_all(ev.time);
    if (clusters_.empty() || cfg_.scheduler != SchedulerKind::Dpsac) {
        std::int64_t ids[] = {app.id};
        cluster_batch(ids, ev.time);
        return;
    }
    insert_single(app, ev.time);
}

void Engine::handle_exit(ApplicationRuntime& app) {
    RemovalResult r = remove_member(clusters_, app.id);
    if (r.cluster_deleted) {
        dists_.erase(r.cluster_id);
        std::visit([&](auto& u) { u.on_cluster_removed(r.cluster_id); }, updater_);
        // The partition stays and keeps draining until the next repartition.
    } else {
        auto it = dists_.find(r.cluster_id);
        if (it != dists_.end())
            it->second = it->second.remove(app.spec.bandwidth, app.spec.io_probability());
        std::visit([&](auto& u) { u.on_member_removed(r.cluster_id, r.length); }, updater_);
        if (auto* ok = std::get_if<OnlineKMeansUpdater>(&updater_)) {
            if (Cluster* c = find_cluster(r.cluster_id)) ok->restore_center(*c);
        }
    }
}

void Engine::complete_instance(ApplicationRuntime& app, double t) {
    for (auto& [cid, flow] : flows_)
        std::erase_if(flow.rates, [&](const ClusterFlow::Rate& r) { return r.app_id == app.id; });
    app.instances_done += 1;
    if (app.instances_done >= app.spec.num_instances) {
        app.phase = ApplicationRuntime::Phase::Done;
        app.finish = t;
        double expected = static_cast<double>(app.spec.num_instances) * app.spec.io_volume();
        double drift = std::abs(app.bytes_to_pfs + app.bytes_to_buffer - expected);
        stats_.max_conservation_drift = std::max(stats_.max_conservation_drift, drift);
        handle_exit(app);
        done_count_ += 1;
    } else {
        start_compute(app, t);
    }
}

void Engine::on_phase(const Event& ev) {
    ApplicationRuntime& app = apps_[static_cast<std::size_t>(ev.app_id)];
    if (app.phase == ApplicationRuntime::Phase::Compute) {
        if (ev.epoch != kAlwaysValid) return;  // stray transfer event from an old layout
        app.phase = ApplicationRuntime::Phase::Io;
        app.remaining = app.spec.io_volume();
        // the next scheduling tick of its cluster picks it up
        return;
    }
    if (app.phase != ApplicationRuntime::Phase::Io) return;
    if (ev.epoch != kAlwaysValid && ev.epoch != epoch_) return;  // pre-repartition schedule
    advance_flow(app.cluster_id, ev.time);
    if (app.remaining > 1e-6) return;  // rates changed since scheduling; tick will resume it
    app.remaining = 0;
    complete_instance(app, ev.time);
}

void Engine::advance_flow(std::int64_t cluster_id, double t) {
    auto it = flows_.find(cluster_id);
    if (it == flows_.end()) return;
    ClusterFlow& flow = it->second;
    double dt = t - flow.last_advance;
    if (dt <= 0) return;
    flow.last_advance = t;

    double inflow_units = 0;
    for (const auto& r : flow.rates) {
        ApplicationRuntime& app = apps_[static_cast<std::size_t>(r.app_id)];
        double rate = r.pfs + r.buffer;
        if (rate <= 0) continue;
        double moved = std::min(rate * dt, app.remaining);
        app.remaining -= moved;
        app.bytes_to_pfs += moved * (r.pfs / rate);
        app.bytes_to_buffer += moved * (r.buffer / rate);
        inflow_units += r.buffer;
    }

    Partition* part = partitions_.find(cluster_id);
    if (!part) return;
    double frac = flow.tick_len > 0 ? dt / flow.tick_len : 0.0;
    double drain = flow.drain * frac;
    double from_debt = std::min(drain, part->drain_debt);
    part->drain_debt -= from_debt;
    part->occupancy = std::max(0.0, part->occupancy - (drain - from_debt));
    part->occupancy += inflow_units * frac;
    double over = part->occupancy - part->buffer_capacity;
    if (over > 0) {
        stats_.max_occupancy_overrun = std::max(stats_.max_occupancy_overrun, over);
        part->occupancy = part->buffer_capacity;
    }
    if (part->occupancy < 0) {
        stats_.max_occupancy_overrun =
            std::max(stats_.max_occupancy_overrun, -part->occupancy);
        part->occupancy = 0;
    }
}

void Engine::advance_all(double t) {
    for (auto& [id, flow] : flows_) advance_flow(id, t);
}

double Engine::global_rate_at(double t) const {
    double total = 0;
    for (const auto& [id, flow] : flows_) {
        if (t >= flow.tick_start + flow.tick_len - 1e-9) continue;  // tick over, about to renew
        for (const auto& r : flow.rates) total += r.pfs;
        if (flow.tick_len > 0) total += flow.drain / flow.tick_len;
    }
    return total;
}

void Engine::on_tick(const Event& ev) {
    if (ev.epoch != epoch_) return;
    Partition* part = partitions_.find(ev.cluster_id);
    if (!part) return;
    advance_flow(ev.cluster_id, ev.time);

    // Transfers that ended exactly on the tick boundary have no pending
    // completion event of their own; settle them before reallocating.
    if (Cluster* c = find_cluster(ev.cluster_id)) {
        std::vector<std::int64_t> ids;
        for (const auto& m : c->members) ids.push_back(m.app_id);
        for (std::int64_t id : ids) {
            ApplicationRuntime& app = apps_[static_cast<std::size_t>(id)];
            if (app.phase == ApplicationRuntime::Phase::Io && app.remaining <= 1e-9) {
                app.remaining = 0;
                complete_instance(app, ev.time);
            }
        }
    }
    if (done_count_ == apps_.size()) return;

    ClusterFlow& flow = flows_[ev.cluster_id];
    Cluster* cluster = find_cluster(ev.cluster_id);
    double unit = cluster && cluster->time_unit > 0 ? cluster->time_unit : flow.unit;
    if (unit <= 0) unit = 1.0;

    std::vector<IoRequest> pending;
    if (cluster) {
        for (const auto& m : cluster->members) {
            const ApplicationRuntime& app = apps_[static_cast<std::size_t>(m.app_id)];
            if (app.phase != ApplicationRuntime::Phase::Io || app.remaining <= 0) continue;
            pending.push_back({app.id, app.spec.bandwidth, app.spec.nodes, app.rho(),
                               efficiency_now(app, ev.time), app.release});
        }
    }

    Allocation alloc;
    if (cfg_.scheduler == SchedulerKind::Bios) {
        alloc = schedule_bios(pending, cfg_.system, part->occupancy, part->buffer_capacity,
                              cfg_.strategy);
    } else {
        alloc = schedule_cluster(pending, dist_of(ev.cluster_id), *part, cfg_.strategy, opts_,
                                 rng_sched_);
    }

    double budget = cfg_.scheduler == SchedulerKind::Bios
                        ? static_cast<double>(cfg_.system.pfs_bandwidth)
                        : static_cast<double>(part->drain_budget);
    double sum_pfs = 0;
    for (const auto& a : alloc.apps) {
        sum_pfs += a.pfs_rate;
        const auto& spec = apps_[static_cast<std::size_t>(a.app_id)].spec;
        double app_excess = a.pfs_rate + a.buffer_rate - spec.bandwidth;
        stats_.max_app_rate_excess = std::max(stats_.max_app_rate_excess, app_excess);
    }
    double cluster_rate = sum_pfs + (unit > 0 ? alloc.drain_amount / unit : 0.0);
    stats_.max_cluster_rate_excess =
        std::max(stats_.max_cluster_rate_excess, cluster_rate - budget);

    flow.rates.clear();
    for (const auto& a : alloc.apps) flow.rates.push_back({a.app_id, a.pfs_rate, a.buffer_rate});
    flow.drain = alloc.drain_amount;
    flow.tick_start = ev.time;
    flow.tick_len = unit;
    flow.unit = unit;
    flow.last_advance = ev.time;

    stats_.max_global_rate_excess =
        std::max(stats_.max_global_rate_excess,
                 global_rate_at(ev.time) - cfg_.system.pfs_bandwidth);

    if (cfg_.record_trace) {
        TickRecord rec;
        rec.time = ev.time;
        rec.cluster_id = ev.cluster_id;
        rec.drain = alloc.drain_amount;
        rec.apps = alloc.apps;
        std::sort(rec.apps.begin(), rec.apps.end(),
                  [](const AppAllocation& a, const AppAllocation& b) { return a.app_id < b.app_id; });
        trace_.push_back(std::move(rec));
    }

    for (const auto& a : alloc.apps) {
        const ApplicationRuntime& app = apps_[static_cast<std::size_t>(a.app_id)];
        double rate = a.pfs_rate + a.buffer_rate;
        if (rate <= 0) continue;
        double t_fin = ev.time + app.remaining / rate;
        if (t_fin <= ev.time + unit + 1e-9) {
            Event pt;
            pt.time = t_fin;
            pt.kind = Event::Kind::PhaseTransition;
            pt.app_id = a.app_id;
            pt.epoch = epoch_;
            push(std::move(pt));
        }
    }
    push_tick(ev.time + unit, ev.cluster_id);
}

MetricsReport Engine::execute() {
    // materialize applications and their arrival events
    double serial_total = 0;
    double last_release = 0;
    std::vector<std::int64_t> initial;
    for (const auto& entry : cfg_.scenario.initial_batch) {
        for (int i = 0; i < entry.count; ++i) {
            ApplicationRuntime app;
            app.id = static_cast<std::int64_t>(apps_.size());
            app.spec = entry.app;
            app.release = 0;
            initial.push_back(app.id);
            serial_total += entry.app.num_instances * entry.app.period;
            apps_.push_back(std::move(app));
        }
    }
    double admit_until = cfg_.scenario.horizon.value_or(0.0);
    for (const auto& join : cfg_.scenario.periodic_joins) {
        for (int k = 1; join.join_period * k <= admit_until + 1e-9; ++k) {
            ApplicationRuntime app;
            app.id = static_cast<std::int64_t>(apps_.size());
            app.spec = with_instances(join.app, join.instances_per_join);
            app.release = join.join_period * k;
            last_release = std::max(last_release, app.release);
            serial_total += app.spec.num_instances * app.spec.period;
            Event ev;
            ev.time = app.release;
            ev.kind = Event::Kind::AppArrival;
            ev.app_id = app.id;
            push(std::move(ev));
            apps_.push_back(std::move(app));
        }
    }
    if (apps_.empty()) throw std::invalid_argument("scenario has no applications");

    Event batch;
    batch.time = 0;
    batch.kind = Event::Kind::BatchArrival;
    batch.batch = std::move(initial);
    push(std::move(batch));

    double hard_horizon = last_release + 10.0 * serial_total + 1000.0;
    Event end;
    end.time = hard_horizon;
    end.kind = Event::Kind::SimulationEnd;
    push(std::move(end));

    while (!queue_.empty()) {
        if (done_count_ == apps_.size()) break;
        Event ev = queue_.top();
        queue_.pop();
        switch (ev.kind) {
            case Event::Kind::BatchArrival: on_batch(ev); break;
            case Event::Kind::AppArrival: on_arrival(ev); break;
            case Event::Kind::PhaseTransition: on_phase(ev); break;
            case Event::Kind::SchedulingTick: on_tick(ev); break;
            case Event::Kind::SimulationEnd: {
                std::size_t unfinished = apps_.size() - done_count_;
                throw HorizonError("simulation exceeded the hard horizon with " +
                                   std::to_string(unfinished) + " unfinished applications");
            }
        }
    }
    if (done_count_ != apps_.size())
        throw HorizonError("event queue drained with unfinished applications");

    MetricsReport report = compute_metrics(apps_, cfg_.system);
    report.invariants = stats_;
    report.scenario = cfg_.scenario.name;
    report.scheduler = cfg_.scheduler;
    report.updater = cfg_.updater;
    report.strategy = cfg_.strategy;
    report.seed = cfg_.seed;
    report.trace = std::move(trace_);
    return report;
}

}  // namespace

MetricsReport run(const RunConfig& config) {
    Engine engine(config);
    return engine.execute();
}

}  // namespace dpsac
