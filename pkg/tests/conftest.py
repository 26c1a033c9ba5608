from hypothesis import HealthCheck, settings

# finite-difference-heavy properties have wildly varying per-example cost;
# wall-clock deadlines only make them flaky
settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
