from hypothesis import settings

settings.register_profile("brc", deadline=None, max_examples=100)
settings.load_profile("brc")
