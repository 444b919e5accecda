from hypothesis import settings

# exact rational arithmetic has uneven per-example cost
settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")
