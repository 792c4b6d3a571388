import hypothesis

hypothesis.settings.register_profile(
    "bellrmt", hypothesis.settings(max_examples=25, deadline=None)
)
hypothesis.settings.load_profile("bellrmt")
