from hypothesis import settings

# property tests must be reproducible run to run
settings.register_profile("deterministic", derandomize=True, max_examples=60)
settings.load_profile("deterministic")
