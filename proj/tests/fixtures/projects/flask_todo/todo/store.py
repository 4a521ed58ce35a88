class ItemStore:
    """In-memory items; the word route appears here but is not a decorator."""

    def __init__(self):
        self.items = {}

    def all(self, done=None):
        return list(self.items.values())

    def get(self, item_id):
        return self.items.get(item_id)

    def delete(self, item_id):
        self.items.pop(item_id, None)
